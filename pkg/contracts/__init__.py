"""Frozen value types shared by every package."""
