"""Experiment execution, comparison metrics and reports."""
