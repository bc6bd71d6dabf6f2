"""
Engine Errors

Exceptions raised when an input object breaks one of its defining axioms.
"""

from collections.abc import Iterable

from engines.services.algebra import sorted_labels


def _describe(item: object) -> str:
    if isinstance(item, frozenset | set):
        return "{" + ",".join(sorted_labels(item)) + "}"
    return str(item)


class AxiomViolation(ValueError):
    """
    An object failed an axiom of its type.

    Carries the axiom name and a witness (the sets or labels exhibiting the
    failure) so the CLI can report both.
    """

    def __init__(self, axiom: str, witness: Iterable[object] = (), detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        shown = ", ".join(_describe(w) for w in self.witness)
        message = f"{axiom} violated"
        if shown:
            message += f" (witness: {shown})"
        if detail:
            message += f": {detail}"
        super().__init__(message)

    def witness_labels(self) -> list[object]:
        """Witness in JSON-ready form: sets become sorted label lists."""
        return [
            list(sorted_labels(w)) if isinstance(w, frozenset | set) else str(w)
            for w in self.witness
        ]


class InputError(ValueError):
    """The command line or its JSON input cannot be used."""


# Failures a verb may raise; the CLI turns each into a JSON diagnostic.
ENGINE_ERRORS: tuple[type[Exception], ...] = (ValueError, RuntimeError, KeyError)
