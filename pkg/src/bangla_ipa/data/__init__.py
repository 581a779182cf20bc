"""Shipped lexicon data files."""
