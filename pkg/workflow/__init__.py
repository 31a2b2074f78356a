"""Experiment harness: configuration, run directories and CLI commands."""
