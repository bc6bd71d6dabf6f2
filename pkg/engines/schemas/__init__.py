"""Engine schema definitions: JSON payloads and result models."""
