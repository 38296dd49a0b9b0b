"""Relation extraction components."""
