"""CLI, instance generation, validation and comparison runs."""
