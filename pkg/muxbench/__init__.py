"""
muxbench: compilation and benchmarking of quantum circuits on hardware with
multiplexed control electronics.
"""

__version__ = "1.0.0"
