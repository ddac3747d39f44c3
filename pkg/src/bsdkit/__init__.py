"""bsdkit: exact-arithmetic toolkit for Tamagawa numbers and real
periods of Jacobians, computed from combinatorial regular-model data."""

__version__ = "0.1.0"
