"""Confluent Heun functions and mechanical verification of their integral identities."""

__version__ = "0.1.0"
