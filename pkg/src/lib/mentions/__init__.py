"""Mention detection components."""
