#!/usr/bin/env python3
"""
Partition oracles and canonization reports.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.models.errors import AmbientMismatchError, OracleDomainError
from src.models.staircase import StaircaseValues
from src.models.vectors import BlockSequence, DisjointFamily, LeKVector


class PartitionOracle(BaseModel):
    """
    An equivalence relation on the finite subspace <generators>, given
    extensionally as a class id per vector. Keys are canonical vector
    serializations (see LeKVector.key).
    """
    k: int = Field(..., ge=1)
    generators: BlockSequence
    classes: Dict[str, int]

    def class_id(self, s: LeKVector) -> int:
        if s.k != self.k:
            raise AmbientMismatchError(f"ambient levels differ: {s.k} != {self.k}")
        key = s.key()
        try:
            return self.classes[key]
        except KeyError:
            raise OracleDomainError(f"oracle has no class for {key}", key) from None

    def is_standard(self) -> bool:
        """True when the generators are the basis e_0..e_n."""
        return all(
            term.coeffs == (0,) * index + (self.k,)
            for index, term in enumerate(self.generators.terms)
        )

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"k": self.k}
        if self.is_standard():
            payload["n"] = len(self.generators) - 1
        else:
            payload["generators"] = self.generators.to_json()["terms"]
        payload["classes"] = dict(self.classes)
        return payload


class CanonizationResult(BaseModel):
    """
    A witness block sequence on whose subspace the oracle coincides with
    the staircase relation given by values. Brute-force witnesses are sos;
    the k=1 fast path may return any block sequence, since every k=1
    family member is defined on all of FIN_1.
    """
    witness: BlockSequence
    values: StaircaseValues
    checked_pairs: int
    candidates_tried: int
    method: str = "bruteforce"

    def to_json(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "witness": self.witness.to_json(),
            "values": self.values.to_json(),
            "checked_pairs": self.checked_pairs,
            "candidates_tried": self.candidates_tried,
        }


class SymmetricCanonizationResult(BaseModel):
    """
    Canonization onto disjointly supported sos vectors, where the oracle
    coincides with a symmetric staircase relation.
    """
    witness: BlockSequence
    family: DisjointFamily
    source_values: StaircaseValues
    values: StaircaseValues
    checked_pairs: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "method": "symmetric",
            "witness": self.witness.to_json(),
            "family": self.family.to_json(),
            "source_values": self.source_values.to_json(),
            "values": self.values.to_json(),
            "checked_pairs": self.checked_pairs,
        }


class EstimateReport(BaseModel):
    """
    Empirical size n such that sampled relations on <e_0..e_n> canonize.
    """
    k: int
    m: int
    trials: int
    n: int
    lower_bound: int
    seed: int = 0
    failures_below: List[Dict[str, Any]] = Field(default_factory=list)
    note: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()
