"""Operational scripts for Relativity Lab."""
