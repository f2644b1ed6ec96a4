"""Non-realizability certificates and exact derivation-chain verification.

A derivation chain works from a set of facts (polynomials asserted strictly
positive).  Each step claims a new strictly positive polynomial, written as
a positive-rational-weighted sum of products of prior facts; the chain
certifies infeasibility when the final step's polynomial is identically zero
or a negative constant (so "target > 0" is absurd).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CertificateInvalidError
from .poly import Polynomial, Ring


@dataclass
class NonrealizabilityCertificate:
    """Machine-checkable witness: kind and kind-specific witness data."""

    kind: str  # trivial-saturated-ideal | extra-zero | sign-contradiction
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": self.witness}

    def render(self) -> str:
        if self.kind == "trivial-saturated-ideal":
            return (
                "saturating the reduced slack ideal by the reconstruction "
                f"polynomial {self.witness.get('polynomial')} yields the unit ideal"
            )
        if self.kind == "extra-zero":
            pos = self.witness.get("position")
            return (
                f"reconstructed entry at (row {pos[0]}, facet {pos[1]}) is "
                "identically zero but the combinatorics require it nonzero"
            )
        if self.kind == "sign-contradiction":
            return "a verified derivation chain shows required-positive entries are infeasible"
        return f"certificate of kind {self.kind}"


@dataclass
class PositivityConstraintSet:
    """Polynomials required strictly positive, with matrix provenance."""

    ring: Ring
    constraints: list = field(default_factory=list)  # (Polynomial, (row, facet))

    def polynomials(self) -> list:
        return [p for p, _src in self.constraints]

    def add(self, p: Polynomial, source):
        self.constraints.append((p, tuple(source)))

    def contains_poly(self, p: Polynomial) -> bool:
        return any(q == p for q in self.polynomials())

    def to_json(self) -> list:
        return [
            {"positive": p.text(), "row": src[0], "facet": src[1]}
            for p, src in self.constraints
        ]


@dataclass
class ChainStep:
    """target > 0 because target == sum of coeff * product(refs)."""

    target: Polynomial
    terms: list  # (Fraction coeff > 0, [refs]); ref "f<i>" = fact, "s<i>" = step


@dataclass
class DerivationChain:
    facts: list  # Polynomial, each asserted > 0
    steps: list  # ChainStep

    @classmethod
    def from_json(cls, ring: Ring, data: dict, rename: dict = None) -> "DerivationChain":
        def tr(text: str) -> str:
            if rename:
                for k in sorted(rename, key=len, reverse=True):
                    text = text.replace(k, rename[k])
            return text

        facts = [ring.parse(tr(t)) for t in data["facts"]]
        steps = []
        for s in data["steps"]:
            terms = [
                (Fraction(t["coeff"]), list(t["factors"])) for t in s["terms"]
            ]
            steps.append(ChainStep(target=ring.parse(tr(s["target"])), terms=terms))
        return cls(facts=facts, steps=steps)

    def to_json(self) -> dict:
        return {
            "facts": [f.text() for f in self.facts],
            "steps": [
                {
                    "target": s.target.text(),
                    "terms": [
                        {"coeff": str(c), "factors": refs} for c, refs in s.terms
                    ],
                }
                for s in self.steps
            ],
        }


def verify_infeasibility(
    constraints: PositivityConstraintSet, chain: DerivationChain
) -> bool:
    """Exact check of a derivation chain against a constraint set.

    Every chain fact must be one of the constraints; every step identity must
    hold exactly with positive rational weights; the final target must be the
    zero polynomial or a negative constant.  Raises CertificateInvalidError
    with the failing step index for malformed chains; returns False when a
    step identity fails.
    """
    pool = constraints.polynomials()
    for k, f in enumerate(chain.facts):
        if not any(f == q for q in pool):
            raise CertificateInvalidError(
                f"chain fact {k} ({f.text()}) is not among the positivity constraints",
                step_index=None,
            )

    ring = constraints.ring
    known = []  # step targets established so far

    def resolve(ref: str) -> Polynomial:
        if ref.startswith("f"):
            idx = int(ref[1:])
            if idx >= len(chain.facts):
                raise CertificateInvalidError(f"no fact {ref}")
            return chain.facts[idx]
        if ref.startswith("s"):
            idx = int(ref[1:])
            if idx >= len(known):
                raise CertificateInvalidError(f"step reference {ref} not yet established")
            return known[idx]
        raise CertificateInvalidError(f"malformed reference {ref!r}")

    for i, step in enumerate(chain.steps):
        acc = ring.zero()
        for coeff, refs in step.terms:
            if coeff <= 0:
                raise CertificateInvalidError(
                    f"step {i} uses non-positive weight {coeff}", step_index=i
                )
            prod = ring.const(coeff)
            for ref in refs:
                try:
                    prod = prod * resolve(ref)
                except CertificateInvalidError as err:
                    raise CertificateInvalidError(str(err), step_index=i) from err
            acc = acc + prod
        if acc != step.target:
            return False
        known.append(step.target)

    if not chain.steps:
        return False
    final = chain.steps[-1].target
    if final.is_zero():
        return True
    return final.is_constant() and final.constant_value() < 0


def certificate_to_json_text(cert: NonrealizabilityCertificate) -> str:
    return json.dumps(cert.to_json(), indent=2, sort_keys=True)
