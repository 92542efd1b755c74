"""Built-in Ziegler fixture: the nine-plane arrangement whose derivation
module contains a degree-5 member, together with that derivation.

The data ships as literal text files (``data/ziegler_x2.arr`` and
``data/ziegler_thetaz.der``) so the transcription can be inspected and diffed;
loading re-verifies that the derivation is logarithmic, so a corrupted
transcription cannot propagate silently.
"""

from __future__ import annotations

from importlib.resources import files

from .arrangement import Arrangement, load_arrangement
from .derivations import Derivation, NotLogarithmicError, k_vector, load_derivation


class ZieglerFixtureError(ValueError):
    """The shipped fixture data failed its self-check."""


def arrangement_text() -> str:
    return files("logderiv.data").joinpath("ziegler_x2.arr").read_text()


def derivation_text() -> str:
    return files("logderiv.data").joinpath("ziegler_thetaz.der").read_text()


def ziegler_arrangement() -> Arrangement:
    return load_arrangement(arrangement_text())


def ziegler_derivation() -> Derivation:
    return load_derivation(derivation_text())


def emit_ziegler_fixture() -> tuple[Arrangement, Derivation]:
    """Load both fixture files and run the membership self-check."""
    arr = ziegler_arrangement()
    theta = ziegler_derivation()
    try:
        k_vector(arr, theta)
    except NotLogarithmicError as exc:
        raise ZieglerFixtureError(
            f"fixture transcription error: {exc}; the shipped data files are corrupted"
        ) from exc
    return arr, theta
