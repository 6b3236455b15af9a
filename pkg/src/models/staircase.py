#!/usr/bin/env python3
"""
Staircase data models: members of the invariant family F and the value
tuples (I0, J0, l0, I1, J1, l1, l2) that identify staircase functions.
"""

from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Marker for a zero component (the theta map with parameter -1).
ZERO_COMPONENT = -1


class MemberKind(str, Enum):
    """
    Kinds of family members.
    """
    MIN = "min"
    MAX = "max"
    THETA0 = "theta0"
    THETA1 = "theta1"
    THETA2 = "theta2"
    ZERO = "zero"


class FamilyMember(BaseModel):
    """
    One member of F: min_i, max_i, theta0_{i,l}, theta1_{i,l}, theta2_l or 0.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    kind: MemberKind
    i: Optional[int] = None
    l: Optional[int] = None

    @model_validator(mode="before")
    @classmethod
    def _normalize_zero(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("l") == ZERO_COMPONENT:
            return {"k": data["k"], "kind": MemberKind.ZERO}
        return data

    @model_validator(mode="after")
    def _check_parameters(self) -> "FamilyMember":
        k, kind, i, l = self.k, self.kind, self.i, self.l
        if kind in (MemberKind.MIN, MemberKind.MAX):
            if i is None or not 1 <= i <= k or l is not None:
                raise ValueError(f"{kind.value} needs 1 <= i <= {k} and no l")
        elif kind in (MemberKind.THETA0, MemberKind.THETA1):
            if i is None or not 2 <= i <= k or l is None or not 1 <= l <= i - 1:
                raise ValueError(f"{kind.value} needs 2 <= i <= {k} and 1 <= l <= i-1")
        elif kind == MemberKind.THETA2:
            if i is not None or l is None or not 1 <= l <= k:
                raise ValueError(f"theta2 needs 1 <= l <= {k}")
        elif i is not None or l is not None:
            raise ValueError("the zero member takes no parameters")
        return self

    def label(self) -> str:
        if self.kind == MemberKind.ZERO:
            return "0"
        if self.kind in (MemberKind.MIN, MemberKind.MAX):
            return f"{self.kind.value}_{self.i}"
        if self.kind == MemberKind.THETA2:
            return f"theta2_{self.l}"
        return f"{self.kind.value}_{self.i},{self.l}"


def _as_pairs(value: Any) -> Tuple[Tuple[int, int], ...]:
    if value is None:
        return ()
    if isinstance(value, Mapping):
        items = value.items()
    else:
        items = value
    return tuple(sorted((int(j), int(l)) for j, l in items))


def linked(indices: Tuple[int, ...]) -> Tuple[int, ...]:
    """J = {j in I : j-1 in I}."""
    members = set(indices)
    return tuple(j for j in indices if j - 1 in members)


class StaircaseValues(BaseModel):
    """
    Value tuple of a staircase function in canonical form.

    J0 and J1 are derived from I0 and I1. The parameter maps l0 and l1 are
    total on J0 and J1, with -1 marking a zero component; l2 = -1 likewise.
    Two tuples are equal iff they induce the same relation.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    I0: Tuple[int, ...] = ()
    I1: Tuple[int, ...] = ()
    l0: Tuple[Tuple[int, int], ...] = ()
    l1: Tuple[Tuple[int, int], ...] = ()
    l2: int = ZERO_COMPONENT

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        for name in ("I0", "I1"):
            data[name] = tuple(sorted(set(int(i) for i in data.get(name, ()) or ())))
        for side in ("0", "1"):
            indices = data[f"I{side}"]
            given = dict(_as_pairs(data.get(f"l{side}")))
            derived = linked(indices)
            unknown = sorted(set(given) - set(derived))
            if unknown:
                raise ValueError(f"l{side} given for {unknown}, which are not in J{side}")
            data[f"l{side}"] = tuple((j, given.get(j, ZERO_COMPONENT)) for j in derived)
        return data

    @model_validator(mode="after")
    def _check_ranges(self) -> "StaircaseValues":
        k = self.k
        for name in ("I0", "I1"):
            indices = getattr(self, name)
            if any(not 1 <= i <= k for i in indices):
                raise ValueError(f"{name} must be a subset of 1..{k}")
        for name in ("l0", "l1"):
            for j, l in getattr(self, name):
                if l != ZERO_COMPONENT and not 1 <= l <= j - 1:
                    raise ValueError(f"{name}({j}) = {l} outside {{-1, 1..{j - 1}}}")
        if self.l2 != ZERO_COMPONENT:
            if not 1 <= self.l2 <= k:
                raise ValueError(f"l2 = {self.l2} outside {{-1, 1..{k}}}")
            if k not in self.I0 or k not in self.I1:
                raise ValueError(f"l2 != -1 requires {k} in I0 and I1")
        return self

    @property
    def J0(self) -> Tuple[int, ...]:
        return linked(self.I0)

    @property
    def J1(self) -> Tuple[int, ...]:
        return linked(self.I1)

    @property
    def is_min_relation(self) -> bool:
        return not self.I1

    @property
    def is_max_relation(self) -> bool:
        return not self.I0

    def l0_map(self) -> Dict[int, int]:
        return dict(self.l0)

    def l1_map(self) -> Dict[int, int]:
        return dict(self.l1)

    def sort_key(self) -> Tuple:
        return (self.I0, self.l0, self.I1, self.l1, self.l2)

    def to_json(self) -> Dict[str, Any]:
        return {
            "I0": list(self.I0),
            "l0": {str(j): l for j, l in self.l0},
            "I1": list(self.I1),
            "l1": {str(j): l for j, l in self.l1},
            "l2": self.l2,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], k: int) -> "StaircaseValues":
        return cls(k=data.get("k", k), I0=data.get("I0", ()), I1=data.get("I1", ()),
                   l0=data.get("l0"), l1=data.get("l1"), l2=data.get("l2", ZERO_COMPONENT))
