"""Pairs of Cayley graphs from sliding-block puzzles on theta graphs."""

__version__ = "0.1.0"
