#!/usr/bin/env python3
"""
Vector data models for the fink toolkit.

A (≤k)-vector is a finitely supported function from positions to
{0, ..., k}, stored densely from position 0 with trailing zeros trimmed.
A k-vector is a (≤k)-vector that attains k.
"""

import json
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _trim(values: Iterable[int]) -> Tuple[int, ...]:
    coeffs = list(values)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class LeKVector(BaseModel):
    """
    A (≤k)-vector at ambient level k. The all-zero vector is the bottom 0.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    coeffs: Tuple[int, ...] = ()

    @field_validator("coeffs", mode="before")
    @classmethod
    def _trim_trailing_zeros(cls, value: Any) -> Tuple[int, ...]:
        return _trim(int(c) for c in value)

    @model_validator(mode="after")
    def _check_range(self) -> "LeKVector":
        for position, coeff in enumerate(self.coeffs):
            if coeff < 0 or coeff > self.k:
                raise ValueError(
                    f"coefficient {coeff} at position {position} outside [0, {self.k}]"
                )
        return self

    # Ambient level is part of the value: vectors at different k never compare equal.
    def __eq__(self, other: Any) -> bool:
        if isinstance(other, LeKVector):
            return self.k == other.k and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.k, self.coeffs))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k={self.k}, {list(self.coeffs)})"

    @property
    def level(self) -> int:
        """Largest coefficient; 0 for the zero vector."""
        return max(self.coeffs, default=0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(n for n, c in enumerate(self.coeffs) if c)

    @property
    def min_support(self) -> Optional[int]:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    @property
    def max_support(self) -> Optional[int]:
        # trimmed, so the last stored coefficient is nonzero
        return len(self.coeffs) - 1 if self.coeffs else None

    def value(self, position: int) -> int:
        if 0 <= position < len(self.coeffs):
            return self.coeffs[position]
        return 0

    def key(self) -> str:
        """Canonical serialization used as a dictionary key."""
        return json.dumps(list(self.coeffs), separators=(",", ":"))

    def to_json(self) -> List[int]:
        return list(self.coeffs)

    @classmethod
    def parse(cls, text: str, k: int) -> "LeKVector":
        """See parse_vector; promotes to KVector when k is attained."""
        return parse_vector(text, k)


class KVector(LeKVector):
    """
    A k-vector: a (≤k)-vector whose range contains k.
    """

    @model_validator(mode="after")
    def _check_attained(self) -> "KVector":
        if self.level != self.k:
            raise ValueError(f"a {self.k}-vector must attain the value {self.k}")
        return self


def make_vector(k: int, coeffs: Sequence[int]) -> LeKVector:
    """
    Trusted constructor for internal use: trims, skips validation and
    returns a KVector whenever the level k is attained.
    """
    trimmed = _trim(coeffs)
    target = KVector if trimmed and max(trimmed) == k else LeKVector
    return target.model_construct(k=k, coeffs=trimmed)


def zero_vector(k: int) -> LeKVector:
    return LeKVector.model_construct(k=k, coeffs=())


def parse_vector(text: str, k: int) -> LeKVector:
    """
    Parse a vector from its JSON array form ``[1,0,2]`` or, for k ≤ 9,
    the compact digit-string form ``102``.

    Raises:
        ValueError: On malformed text or out-of-range coefficients
    """
    text = text.strip()
    if text.startswith("["):
        coeffs = json.loads(text)
        if not isinstance(coeffs, list):
            raise ValueError(f"not a JSON array: {text!r}")
    else:
        if k > 9:
            raise ValueError("digit-string vectors are only accepted when k <= 9")
        if not text.isdigit():
            raise ValueError(f"not a digit string: {text!r}")
        coeffs = [int(ch) for ch in text]
    validated = LeKVector(k=k, coeffs=coeffs)
    return make_vector(k, validated.coeffs)


class BlockSequence(BaseModel):
    """
    A finite k-block sequence: k-vectors with strictly increasing supports.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    terms: Tuple[KVector, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _coerce_terms(cls, data: Any) -> Any:
        if isinstance(data, dict) and "k" in data:
            k = data["k"]
            terms = []
            for term in data.get("terms", ()):
                if isinstance(term, LeKVector):
                    terms.append(term if isinstance(term, KVector) else KVector(k=term.k, coeffs=term.coeffs))
                else:
                    terms.append(KVector(k=k, coeffs=term))
            data = {**data, "terms": tuple(terms)}
        return data

    @model_validator(mode="after")
    def _check_block_order(self) -> "BlockSequence":
        for index, term in enumerate(self.terms):
            if term.k != self.k:
                raise ValueError(f"term {index} has ambient level {term.k}, expected {self.k}")
        for index in range(len(self.terms) - 1):
            if self.terms[index].max_support >= self.terms[index + 1].min_support:
                raise ValueError(f"terms {index} and {index + 1} are not block-ordered")
        return self

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "terms": [term.to_json() for term in self.terms]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "BlockSequence":
        return cls(k=data["k"], terms=data.get("terms", []))


class Coefficients(BaseModel):
    """
    Canonical decomposition of a k-vector over a block sequence.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    values: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_values(self) -> "Coefficients":
        if any(c < 0 or c > self.k for c in self.values):
            raise ValueError(f"coefficients must lie in [0, {self.k}]")
        if self.k not in self.values:
            raise ValueError(f"the decomposition of a {self.k}-vector must attain {self.k}")
        return self

    def to_json(self) -> List[int]:
        return list(self.values)


class DisjointFamily(BaseModel):
    """
    Pairwise disjointly supported k-vectors that need not be block-ordered,
    e.g. the fold of a block sequence.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    terms: Tuple[KVector, ...] = ()

    @model_validator(mode="after")
    def _check_disjoint(self) -> "DisjointFamily":
        seen = set()
        for index, term in enumerate(self.terms):
            support = set(term.support)
            if support & seen:
                raise ValueError(f"term {index} overlaps an earlier term")
            seen |= support
        return self

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "block": False, "terms": [term.to_json() for term in self.terms]}
