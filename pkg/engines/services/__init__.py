"""Engine service implementations: algebra, polytopes, cones, invariants and checks."""
