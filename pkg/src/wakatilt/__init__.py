"""Exact classification of Wakamatsu tilting modules over monomial algebras."""
from .linalg import BACKEND

__version__ = "0.1.0"
