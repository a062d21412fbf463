"""Gaugewise - qLDPC 码规范化测量的合成、模拟与验证."""

__version__ = "0.1.0"
