"""Engine unit tests."""
