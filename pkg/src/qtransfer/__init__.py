"""Entanglement transfer between two multi-qubit sites under excitation-conserving local dynamics."""

from .sector import BellKind, BellParams, PhiSectorState, PsiSectorState, make_bell

__all__ = ["BellKind", "BellParams", "PhiSectorState", "PsiSectorState", "make_bell"]
