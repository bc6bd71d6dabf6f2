"""GP Valuation Engines - Hopf monoid of generalized permutahedra and its valuations."""
