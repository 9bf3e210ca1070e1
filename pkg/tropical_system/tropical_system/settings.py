"""Deprecated legacy settings module.

Kept for backward compatibility; prefer tropical_system.conf.{dev,prod}.
"""
from .conf.dev import *  # noqa
