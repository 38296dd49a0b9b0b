"""Domain model, pipelines, evaluation and command-line entry point."""
