"""
gpval Command Line

Batch interface over the valuation engines. Every verb reads JSON, prints one
canonical JSON document on stdout and exits with

    0  success (or a passing check)
    1  a computed failure: a relation or equality that does not hold
    2  an input error, including axiom violations
"""

import argparse
import logging
import random
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import orjson
from pydantic import ValidationError

from engines.config import Settings, get_settings
from engines.errors import ENGINE_ERRORS, AxiomViolation, InputError
from engines.schemas.common import encode_value
from engines.schemas.objects import load_object, load_subdivision
from engines.schemas.results import CommandOutput
from engines.services.algebra import FormalSum, normalize_label
from engines.services.building_sets import BuildingSet, f_polynomial
from engines.services.hopf import (
    antipode_face_sum,
    get_character,
    qsym_invariant,
    tutte_specialization,
    universal_norm,
    universal_tutte,
)
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.matroid_invariants import (
    VP_ASSUMPTIONS,
    BetaConvention,
    beta,
    bjr_character,
    char_poly,
    csm_weight,
    g_invariant,
    reduced_char,
    tutte,
    volume_polynomial,
)
from engines.services.osp import OrderedSetPartition, all_osps
from engines.services.permutahedra import SubmodularGP, canonical_form, indicator_equal
from engines.services.poset_invariants import (
    antichain_generating_function,
    antichain_polynomial,
    lower_ideal_polynomial,
    minimal_element_count,
    order_polynomial,
    ordered_poincare,
    phi_ell,
    poincare,
    poset_tutte,
    upper_ideal_polynomial,
)
from engines.services.preposet import Poset, Preposet, WeightedPreposet
from engines.services.valuation_lab import (
    convex_combination,
    get_builtin,
    list_builtins,
    list_invariants,
    run_checks,
)

logger = logging.getLogger(__name__)

OBJECT_FLAGS = ("matroid", "flag_matroid", "gp", "poset", "osp", "building_set", "graph")


@dataclass
class Invocation:
    """One parsed command: its JSON document, options and effective settings."""

    document: dict[str, Any]
    options: argparse.Namespace
    settings: Settings


Handler = Callable[[Invocation], CommandOutput]


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------


def _load_json(text: str) -> Any:
    path = Path(text)
    if not text.lstrip().startswith(("{", "[")) and path.is_file():
        return orjson.loads(path.read_bytes())
    return orjson.loads(text)


def _document(options: argparse.Namespace) -> dict[str, Any]:
    document: dict[str, Any] = {}
    if options.input:
        loaded = _load_json(options.input)
        if not isinstance(loaded, dict):
            raise InputError("--input must hold a JSON object")
        document.update(loaded)
    for key in OBJECT_FLAGS:
        value = getattr(options, key, None)
        if value is not None:
            document[key] = _load_json(value)
    return document


def _object(call: Invocation, key: str | None = None) -> Any:
    data = call.document if key is None else call.document.get(key)
    if key is not None and data is None:
        raise InputError(f"Missing JSON object under {key!r}")
    return load_object(data, call.settings.max_ground_size)


def _typed(call: Invocation, *types: type) -> Any:
    element = _object(call)
    if not isinstance(element, types):
        names = ", ".join(t.__name__ for t in types)
        raise InputError(f"This verb needs one of [{names}], got {type(element).__name__}")
    return element


def _matroid(call: Invocation) -> Matroid:
    return _typed(call, Matroid)


def _poset(call: Invocation) -> Poset:
    element = _typed(call, Preposet, WeightedPreposet)
    preposet = element.preposet if isinstance(element, WeightedPreposet) else element
    if not preposet.is_antisymmetric:
        raise InputError(f"{preposet} is not a poset")
    return Poset(preposet.ground, preposet.relation)


def _polytope(call: Invocation) -> SubmodularGP:
    element = _typed(call, SubmodularGP, Matroid, FlagMatroid)
    return element if isinstance(element, SubmodularGP) else element.to_gp()


def _convention(call: Invocation) -> BetaConvention:
    return call.settings.beta_convention


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def _tutte(call: Invocation) -> CommandOutput:
    return CommandOutput(verb="tutte", result=encode_value(tutte(_matroid(call))))


def _char_poly(call: Invocation) -> CommandOutput:
    matroid = _matroid(call)
    result: dict[str, Any] = {"char_poly": encode_value(char_poly(matroid))}
    if matroid.rank() > 0 or matroid.loops():
        result["reduced"] = encode_value(reduced_char(matroid))
    return CommandOutput(verb="char-poly", result=result)


def _beta(call: Invocation) -> CommandOutput:
    convention = _convention(call)
    value = beta(_matroid(call), convention)
    return CommandOutput(verb="beta", result=encode_value(value), assumptions={"beta": convention})


def _csm(call: Invocation) -> CommandOutput:
    matroid = _matroid(call)
    convention = _convention(call)
    if call.options.osp:
        partitions = [OrderedSetPartition.parse(call.options.osp)]
    else:
        partitions = list(all_osps(matroid.ground))
    weights = {str(p): csm_weight(matroid, p, convention) for p in partitions}
    return CommandOutput(verb="csm", result=encode_value(weights), assumptions={"beta": convention})


def _g_invariant(call: Invocation) -> CommandOutput:
    return CommandOutput(verb="g-invariant", result=encode_value(g_invariant(_matroid(call))))


def _bjr(call: Invocation) -> CommandOutput:
    matroid = _matroid(call)
    result = {
        "character": encode_value(bjr_character(matroid)),
        "qsym": encode_value(qsym_invariant(get_character("bjr"), matroid)),
    }
    return CommandOutput(verb="bjr", result=result)


def _volume_poly(call: Invocation) -> CommandOutput:
    value = volume_polynomial(_matroid(call))
    return CommandOutput(verb="volume-poly", result=encode_value(value), assumptions=dict(VP_ASSUMPTIONS))


def _universal_tutte(call: Invocation) -> CommandOutput:
    polytope = _polytope(call)
    character = universal_tutte(polytope)
    result: dict[str, Any] = {
        "universal_tutte": encode_value(character),
        "norm": encode_value(universal_norm(polytope)),
    }
    if "matroid" in call.document:
        result["tutte"] = encode_value(tutte_specialization(character))
    return CommandOutput(verb="universal-tutte", result=result)


def _order_poly(call: Invocation) -> CommandOutput:
    element = _typed(call, Preposet, WeightedPreposet)
    preposet = element.preposet if isinstance(element, WeightedPreposet) else element
    value = order_polynomial(preposet, strict=not call.options.weak)
    return CommandOutput(
        verb="order-poly",
        result=encode_value(value),
        assumptions={"order": "weak" if call.options.weak else "strict"},
    )


def _poset_tutte(call: Invocation) -> CommandOutput:
    poset = _poset(call)
    result = {
        "tutte": encode_value(poset_tutte(poset)),
        "lower_ideals": encode_value(lower_ideal_polynomial(poset)),
        "upper_ideals": encode_value(upper_ideal_polynomial(poset)),
        "antichains": encode_value(antichain_polynomial(poset)),
        "minimal_elements": minimal_element_count(poset),
        "generating_function": encode_value(antichain_generating_function(poset)),
    }
    return CommandOutput(verb="poset-tutte", result=result)


def _poincare(call: Invocation) -> CommandOutput:
    poset = _poset(call)
    result = {
        "poincare": encode_value(poincare(poset)),
        "ordered": encode_value(ordered_poincare(poset)),
    }
    if call.options.order:
        order = [normalize_label(x.strip()) for x in call.options.order.split(",")]
        result["phi_ell"] = encode_value(phi_ell(poset, order))
    return CommandOutput(verb="poincare", result=result)


def _f_poly(call: Invocation) -> CommandOutput:
    building_set = _typed(call, BuildingSet)
    value = f_polynomial(building_set, method=call.options.method)
    return CommandOutput(verb="f-poly", result=encode_value(value), assumptions={"method": call.options.method})


def _combination(call: Invocation, key: str | None = None) -> FormalSum[Any]:
    return convex_combination(_object(call, key))


def _canonical_form(call: Invocation) -> CommandOutput:
    value = canonical_form(_combination(call))
    return CommandOutput(verb="canonical-form", result=encode_value(value))


def _indicator_equal(call: Invocation) -> CommandOutput:
    equal = indicator_equal(_combination(call, "left"), _combination(call, "right"))
    return CommandOutput(verb="indicator-equal", result={"equal": equal}, passed=equal)


def _check_subdivision(call: Invocation) -> CommandOutput:
    if call.options.builtin:
        relation = get_builtin(call.options.builtin)
    elif "subdivision" in call.document:
        relation = load_subdivision(call.document["subdivision"], call.settings.max_ground_size)
    else:
        raise InputError("check-subdivision needs --builtin NAME or a 'subdivision' object")
    rng = random.Random(call.settings.random_seed)
    report = run_checks(relation, call.options.invariant, call.settings.pointwise_samples, rng)
    return CommandOutput(
        verb="check-subdivision",
        result=report.summary(),
        assumptions={
            "samples": str(call.settings.pointwise_samples),
            "seed": str(call.settings.random_seed),
        },
        passed=report.passed,
    )


def _antipode(call: Invocation) -> CommandOutput:
    return CommandOutput(verb="antipode", result=encode_value(antipode_face_sum(_polytope(call))))


def _list_builtins(_call: Invocation) -> CommandOutput:
    return CommandOutput(verb="list-builtins", result=list_builtins())


def _list_invariants(_call: Invocation) -> CommandOutput:
    return CommandOutput(verb="list-invariants", result=list_invariants())


VERBS: dict[str, Handler] = {
    "tutte": _tutte,
    "char-poly": _char_poly,
    "beta": _beta,
    "csm": _csm,
    "g-invariant": _g_invariant,
    "bjr": _bjr,
    "volume-poly": _volume_poly,
    "universal-tutte": _universal_tutte,
    "order-poly": _order_poly,
    "poset-tutte": _poset_tutte,
    "poincare": _poincare,
    "f-poly": _f_poly,
    "canonical-form": _canonical_form,
    "indicator-equal": _indicator_equal,
    "check-subdivision": _check_subdivision,
    "antipode": _antipode,
    "list-builtins": _list_builtins,
    "list-invariants": _list_invariants,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpval", description="Valuations on generalized permutahedra, matroids and posets."
    )
    parser.add_argument("verb", choices=sorted(VERBS), help="Operation to run")
    parser.add_argument("--input", help="JSON document, inline or as a file path")
    for key in OBJECT_FLAGS:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, help=f"{key} object as JSON")
    parser.add_argument("--builtin", help="Name of a built-in relation")
    parser.add_argument(
        "--invariant", action="append", help="Invariant to check (repeatable; default: all applicable)"
    )
    parser.add_argument(
        "--assume", action="append", default=[], metavar="KEY=VALUE", help="Convention, e.g. beta=paper"
    )
    parser.add_argument("--samples", type=int, help="Number of points for pointwise checks")
    parser.add_argument("--order", help="Linear order for phi_ell, e.g. 1,2,3")
    parser.add_argument("--osp", help='Ordered set partition for csm, e.g. "1|23|4"')
    parser.add_argument("--weak", action="store_true", help="Weak instead of strict order polynomial")
    parser.add_argument("--method", choices=["recurrence", "direct"], default="recurrence")
    parser.add_argument("--output", help="Write the JSON document here instead of stdout")
    return parser


def _settings(options: argparse.Namespace) -> Settings:
    overrides: dict[str, Any] = {}
    for assumption in options.assume:
        key, sep, value = assumption.partition("=")
        if not sep:
            raise InputError(f"--assume expects KEY=VALUE, got {assumption!r}")
        if key.strip() != "beta":
            raise InputError(f"Unknown assumption {key!r}; known: ['beta']")
        overrides["beta_convention"] = value.strip()
    if options.samples is not None:
        overrides["pointwise_samples"] = options.samples
    base = get_settings()
    if not overrides:
        return base
    return Settings.model_validate({**base.model_dump(), **overrides})


def _emit(payload: dict[str, Any], output: str | None) -> None:
    data = orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2) + b"\n"
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _diagnostic(exc: Exception) -> dict[str, Any]:
    if isinstance(exc, ValidationError):
        return {"error": "invalid input", "detail": exc.errors(include_url=False, include_context=False)}
    diagnostic: dict[str, Any] = {"error": str(exc)}
    if isinstance(exc, AxiomViolation):
        diagnostic["axiom"] = exc.axiom
        diagnostic["witness"] = exc.witness_labels()
    return diagnostic


def run(argv: list[str] | None = None) -> int:
    """Run one verb; returns the exit code."""
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output = options.output
    try:
        settings = _settings(options)
        logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr)
        outcome = VERBS[options.verb](Invocation(_document(options), options, settings))
    except ENGINE_ERRORS as exc:
        logger.error(f"{options.verb}: {exc}")
        _emit(_diagnostic(exc), output)
        return 2
    _emit(outcome.model_dump(), output)
    return 1 if outcome.passed is False else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
