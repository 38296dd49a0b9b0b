"""Entity classification and linking components."""
