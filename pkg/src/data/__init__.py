"""Bundled instance fixtures, read with importlib.resources.files("data")."""
