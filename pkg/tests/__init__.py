"""Gaugewise 测试包."""
