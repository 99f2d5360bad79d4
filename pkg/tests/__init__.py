"""Test package for clustering-food-prices-kalimantan."""

__version__ = "0.1.0"
