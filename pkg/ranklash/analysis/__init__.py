"""Closed-form and simulated analysis of repeated ranking-manipulation contests."""
