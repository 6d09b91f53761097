"""Exact modules of U_q(sl(2|1)) at roots of unity.

Specs and reports are plain dicts; scalars are exact strings of the form
"n; c0,c1,..." (coefficients in the power basis of the n-th cyclotomic field).
"""

import json

from . import _core
from ._core import DomainError, SpecError, families, parse_parameter, scalar_to_complex

__all__ = [
    "DomainError",
    "Module",
    "SpecError",
    "build",
    "classify",
    "families",
    "load_module",
    "parse_parameter",
    "sample_spec",
    "scalar_to_complex",
]


class Module:
    """A finite-dimensional module with exact generator matrices."""

    def __init__(self, core):
        self._core = core

    @property
    def dim(self):
        return self._core.dim

    @property
    def l(self):
        return self._core.l

    @property
    def family(self):
        return self._core.family

    def to_dict(self):
        return json.loads(self._core.to_json())

    def to_json(self):
        return self._core.to_json()

    def audit(self):
        return json.loads(self._core.audit())

    def relations_hold(self):
        return all(c["holds"] for c in self.audit() if c["applicable"])

    def casimir(self, p):
        return self._core.casimir(p)

    def burnside(self):
        dim, full, method = self._core.burnside()
        return {"dim": dim, "full": full, "method": method}

    def centre_report(self, allow_even=False):
        return json.loads(self._core.centre_report(allow_even))

    def psi(self):
        return Module(self._core.psi())

    def __repr__(self):
        return repr(self._core)


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def build(spec):
    """Build the module described by a spec dict (or its JSON text)."""
    return Module(_core.Module.build(_text(spec)))


def load_module(dump):
    """Rebuild a module from a dump produced by Module.to_json or the CLI."""
    return Module(_core.Module.from_json(_text(dump)))


def sample_spec(l, family, seed, N=None, type_b=False):
    return json.loads(_core.sample_spec(l, family, seed, N, type_b))


def classify(l, lambda1, lambda2, phi=None, beta=None, N=None):
    return json.loads(_core.classify(l, str(lambda1), str(lambda2),
                                     None if phi is None else str(phi),
                                     None if beta is None else str(beta), N))
