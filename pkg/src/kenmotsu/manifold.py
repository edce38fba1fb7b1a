"""Frame-homogeneous almost contact metric manifolds: input, validation, normalisation.

A manifold is described by a global frame e_1..e_n with constant structure
constants, a constant frame metric G, and constant components of phi and xi.
Documents index frame vectors from 1; everything in memory is 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from itertools import product

import jsonschema
import numpy as np

from . import checks
from .exact import (
    format_scalar,
    freeze,
    identity,
    inverse,
    outer,
    spd_check,
    tensor,
    to_scalar,
    zeros,
)

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^[+-]?\d+(/\d+)?$"},
    ]
}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "dimension", "metric", "structure_constants", "phi", "xi"],
    "properties": {
        "name": {"type": "string"},
        "dimension": {"type": "integer", "minimum": 1},
        "metric": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        "structure_constants": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["i", "j", "k", "value"],
                "properties": {
                    "i": {"type": "integer", "minimum": 1},
                    "j": {"type": "integer", "minimum": 1},
                    "k": {"type": "integer", "minimum": 1},
                    "value": _RATIONAL,
                },
            },
        },
        "phi": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        "xi": {"type": "array", "items": _RATIONAL},
        "p": _RATIONAL,
    },
}

CATALOG = ("kenmotsu3", "flat3")


class SpecError(ValueError):
    """Invalid manifold description.

    ``kind`` is ``"schema"`` (the document is malformed; ``field`` names the
    offending location) or ``"invariant"`` (well-formed but geometrically
    invalid; the message names the invariant).
    """

    def __init__(self, message: str, kind: str = "invariant", field: str | None = None):
        super().__init__(message)
        self.kind = kind
        self.field = field


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Lie bracket table [e_i, e_j] = sum_k c^k_ij e_k.

    ``table[i, j, k]`` is c^k_ij (0-based), antisymmetric in (i, j) by
    construction: only i < j entries are ever supplied.
    """

    dimension: int
    table: np.ndarray

    @classmethod
    def from_entries(cls, dimension: int, entries) -> "StructureConstants":
        """Build from 1-based ``(i, j, k, value)`` tuples with i < j."""
        c = zeros(dimension, dimension, dimension)
        seen = set()
        for n, (i, j, k, value) in enumerate(entries):
            where = f"structure_constants/{n}"
            for name, idx in (("i", i), ("j", j), ("k", k)):
                if not 1 <= idx <= dimension:
                    raise SpecError(f"{where}/{name}: index {idx} outside 1..{dimension}", "schema", f"{where}/{name}")
            if not i < j:
                raise SpecError(f"{where}: entries must have i < j, got ({i},{j})", "schema", where)
            if (i, j, k) in seen:
                raise SpecError(f"{where}: duplicate entry for ({i},{j},{k})", "schema", where)
            seen.add((i, j, k))
            v = to_scalar(value)
            c[i - 1, j - 1, k - 1] = v
            c[j - 1, i - 1, k - 1] = -v
        return cls(dimension, freeze(c))

    @classmethod
    def from_table(cls, table) -> "StructureConstants":
        table = freeze(table)
        n = table.shape[0]
        for i, j, k in product(range(n), repeat=3):
            if table[i, j, k] != -table[j, i, k]:
                raise SpecError(f"bracket table not antisymmetric at ({i + 1},{j + 1},{k + 1})")
        return cls(n, table)

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        """Nonzero entries, 1-based, i < j, sorted."""
        n = self.dimension
        return [
            (i + 1, j + 1, k + 1, self.table[i, j, k])
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(n)
            if self.table[i, j, k] != 0
        ]

    def bracket(self, u, v) -> np.ndarray:
        """[u, v] for constant-coefficient vector fields u, v."""
        return np.einsum("i,j,ijk->k", np.asarray(u, dtype=object), np.asarray(v, dtype=object), self.table)

    def __eq__(self, other) -> bool:
        return isinstance(other, StructureConstants) and self.entries() == other.entries()


def jacobi_check(c: StructureConstants) -> list[tuple[tuple[int, int, int, int], Fraction]]:
    """All (i, j, l, k) (1-based) where the cyclic Jacobi sum has a nonzero k-component.

    An empty list means the bracket table defines a Lie algebra.
    """
    t = c.table
    # J[i,j,l,k] = sum_m c^m_ij c^k_ml
    nested = np.einsum("ijm,mlk->ijlk", t, t)
    total = nested + nested.transpose(1, 2, 0, 3) + nested.transpose(2, 0, 1, 3)
    out = []
    for idx in np.ndindex(total.shape):
        if total[idx] != 0:
            out.append((tuple(i + 1 for i in idx), Fraction(total[idx])))
    return out


def eta_from_xi(G, xi) -> np.ndarray:
    """eta_a = sum_b G_ab xi_b; refuses when eta(xi) != 1."""
    eta = freeze(np.einsum("ab,b->a", np.asarray(G, dtype=object), np.asarray(xi, dtype=object)))
    norm = np.dot(eta, xi)
    if norm != 1:
        raise SpecError(f"g(xi,xi) = eta(xi) = {format_scalar(norm)} != 1")
    return eta


@dataclass(frozen=True, eq=False)
class FrameManifoldSpec:
    """A validated frame-homogeneous almost contact metric manifold.

    ``phi[a, b]`` is the a-th component of phi(e_b).  eta is always derived
    from the metric and xi.  ``p`` is the (constant) conformal scalar, if given.
    Construction validates every invariant and raises :class:`SpecError`.
    """

    name: str
    metric: np.ndarray
    structure: StructureConstants
    phi: np.ndarray
    xi: np.ndarray
    p: Fraction | None = None

    def __post_init__(self):
        n = self.dimension
        object.__setattr__(self, "metric", freeze(self.metric))
        object.__setattr__(self, "phi", freeze(self.phi))
        object.__setattr__(self, "xi", freeze(self.xi))
        if self.p is not None:
            object.__setattr__(self, "p", to_scalar(self.p))
        if n < 3 or n % 2 == 0:
            raise SpecError(f"dimension must be odd and >= 3, got {n}")
        if self.metric.shape != (n, n):
            raise SpecError(f"metric must be {n}x{n}", "schema", "metric")
        if self.phi.shape != (n, n):
            raise SpecError(f"phi must be {n}x{n}", "schema", "phi")
        if self.xi.shape != (n,):
            raise SpecError(f"xi must have {n} components", "schema", "xi")
        if self.structure.dimension != n:
            raise SpecError("structure constants dimension differs from metric", "schema", "structure_constants")
        spd = spd_check(self.metric)
        if not spd:
            raise SpecError(f"metric is not positive definite: {spd.witness}")
        violations = jacobi_check(self.structure)
        if violations:
            (i, j, l, k), value = violations[0]
            raise SpecError(f"Jacobi fails at ({i},{j},{l},{k}): cyclic sum {format_scalar(value)}")
        eta_from_xi(self.metric, self.xi)

    @property
    def dimension(self) -> int:
        return self.metric.shape[0]

    @property
    def half_dim(self) -> int:
        """The n of a (2n+1)-dimensional manifold."""
        return (self.dimension - 1) // 2

    @cached_property
    def eta(self) -> np.ndarray:
        return eta_from_xi(self.metric, self.xi)

    @cached_property
    def metric_inverse(self) -> np.ndarray:
        return inverse(self.metric)

    @property
    def c(self) -> np.ndarray:
        return self.structure.table

    def with_p(self, p) -> "FrameManifoldSpec":
        return FrameManifoldSpec(self.name, self.metric, self.structure, self.phi, self.xi, p)

    def to_document(self) -> dict:
        return serialize_spec(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, FrameManifoldSpec) and serialize_spec(self) == serialize_spec(other)

    def __hash__(self):
        return hash(json.dumps(serialize_spec(self), sort_keys=True))


def _doc_scalar(value):
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else format_scalar(q)


def _schema_error(err: jsonschema.ValidationError) -> SpecError:
    where = "/".join(str(x) for x in err.absolute_path) or "<document>"
    if err.validator == "additionalProperties":
        extra = sorted(set(err.instance) - set(err.schema.get("properties", {})))
        where = "/".join([where, *extra]) if where != "<document>" else ",".join(extra)
        return SpecError(f"unknown field(s) {where}", "schema", where)
    if err.validator == "required":
        missing = err.message.split("'")[1]
        return SpecError(f"missing required field '{missing}'", "schema", missing)
    return SpecError(f"{where}: {err.message}", "schema", where)


def _matrix(doc, key: str, n: int) -> np.ndarray:
    rows = doc[key]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SpecError(f"{key}: expected a {n}x{n} array", "schema", key)
    try:
        return tensor(rows)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"{key}: {exc}", "schema", key) from exc


def parse_spec(document) -> FrameManifoldSpec:
    """Validate a spec document (a JSON string or an already-decoded mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"not valid JSON: {exc}", "schema", "<document>") from exc
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(document), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        raise _schema_error(errors[0])
    n = document["dimension"]
    if isinstance(n, float):
        raise SpecError("dimension must be an integer", "schema", "dimension")
    metric = _matrix(document, "metric", n)
    phi = _matrix(document, "phi", n)
    if len(document["xi"]) != n:
        raise SpecError(f"xi: expected {n} components", "schema", "xi")
    try:
        xi = tensor(document["xi"])
        entries = [(e["i"], e["j"], e["k"], to_scalar(e["value"])) for e in document["structure_constants"]]
        p = to_scalar(document["p"]) if "p" in document else None
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(str(exc), "schema", "<value>") from exc
    structure = StructureConstants.from_entries(n, entries)
    return FrameManifoldSpec(document["name"], metric, structure, phi, xi, p)


def load_spec(path) -> FrameManifoldSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_spec(text)


def serialize_spec(spec: FrameManifoldSpec) -> dict:
    """Canonical document: integers stay integers, other rationals become "a/b"."""
    doc = {
        "name": spec.name,
        "dimension": spec.dimension,
        "metric": [[_doc_scalar(x) for x in row] for row in spec.metric],
        "structure_constants": [
            {"i": i, "j": j, "k": k, "value": _doc_scalar(v)} for i, j, k, v in spec.structure.entries()
        ],
        "phi": [[_doc_scalar(x) for x in row] for row in spec.phi],
        "xi": [_doc_scalar(x) for x in spec.xi],
    }
    if spec.p is not None:
        doc["p"] = _doc_scalar(spec.p)
    return doc


def dump_document(spec: FrameManifoldSpec) -> str:
    """Canonical text of a spec document: one matrix per line, one bracket per line."""
    doc = serialize_spec(spec)
    lines = []
    for key, value in doc.items():
        if key == "structure_constants" and value:
            body = ",\n".join(f"    {json.dumps(e)}" for e in value)
            lines.append(f'  "{key}": [\n{body}\n  ]')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def example_text(name: str) -> str:
    """The packaged example document, byte for byte."""
    if name not in CATALOG:
        raise KeyError(name)
    return resources.files("kenmotsu").joinpath("examples", f"{name}.json").read_text(encoding="utf-8")


def example_spec(name: str) -> FrameManifoldSpec:
    return parse_spec(example_text(name))


def verify_almost_contact(spec: FrameManifoldSpec) -> checks.VerificationReport:
    """Check the almost contact metric axioms as exact matrix identities.

    Array conventions in the records: endomorphisms are ``[component, input]``,
    bilinear forms ``[slot1, slot2]``.
    """
    G, phi, xi, eta = spec.metric, spec.phi, spec.xi, spec.eta
    n = spec.dimension
    phi2 = phi.dot(phi)
    records = [
        checks.compare(
            "almost-contact",
            [
                ("phi^2 = -Id + xi(x)eta", phi2, -identity(n) + outer(xi, eta)),
                ("eta(xi) = 1", np.array([eta.dot(xi)], dtype=object), np.array([Fraction(1)], dtype=object)),
                ("eta o phi = 0", eta.dot(phi), zeros(n)),
                ("phi xi = 0", phi.dot(xi), zeros(n)),
            ],
        ),
        checks.compare("compatible-metric", [("g(phiX,phiY) = g(X,Y) - eta(X)eta(Y)", phi.T.dot(G).dot(phi), G - outer(eta, eta))]),
        checks.compare("phi-skew", [("g(X,phiY) = -g(phiX,Y)", G.dot(phi), -(phi.T.dot(G)))]),
        checks.compare("eta-dual", [("g(X,xi) = eta(X)", G.dot(xi), eta)]),
    ]
    return checks.VerificationReport(tuple(records))


def change_frame(spec: FrameManifoldSpec, P, name: str | None = None) -> FrameManifoldSpec:
    """Re-express ``spec`` in the frame f_a = sum_b P[b, a] e_b.

    The geometry is unchanged; only components move.  Useful for producing
    non-orthonormal, non-diagonal instances of a known manifold.
    """
    P = freeze(P)
    Q = inverse(P)
    # contract one index at a time; the four-operand einsum is O(n^6) on objects
    c = np.einsum("ijk,ck->ijc", np.einsum("ijk,jb->ibk", np.einsum("ijk,ia->ajk", spec.c, P), P), Q)
    return FrameManifoldSpec(
        name or f"{spec.name}-reframed",
        P.T.dot(spec.metric).dot(P),
        StructureConstants.from_table(c),
        Q.dot(spec.phi).dot(P),
        Q.dot(spec.xi),
        spec.p,
    )
