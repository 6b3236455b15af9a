#!/usr/bin/env python3
"""
Free k-terms, k-equations and decision reports.
"""

from enum import Enum
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.vectors import LeKVector


class Verdict(str, Enum):
    """
    Outcome of deciding an equation over a finite block sequence.
    """
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


class FreeTerm(BaseModel):
    """
    The term T^{k-m_0} x_0 + ... + T^{k-m_n} x_n, stored as (m_0, ..., m_n).

    A free k-term has some m_i = k; (≤k)-terms may stay below.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    exps: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_exps(self) -> "FreeTerm":
        if not self.exps:
            raise ValueError("a term needs at least one variable")
        if any(m < 0 or m > self.k for m in self.exps):
            raise ValueError(f"exponents must lie in [0, {self.k}]")
        return self

    @property
    def arity(self) -> int:
        return len(self.exps)

    @property
    def level(self) -> int:
        return max(self.exps)

    @property
    def is_free_k_term(self) -> bool:
        return self.level == self.k

    def padded(self, arity: int) -> "FreeTerm":
        if arity < self.arity:
            raise ValueError(f"cannot pad a term of arity {self.arity} down to {arity}")
        return FreeTerm(k=self.k, exps=self.exps + (0,) * (arity - self.arity))

    def __str__(self) -> str:
        summands = []
        for index, m in enumerate(self.exps):
            if m == 0:
                continue
            power = self.k - m
            if power == 0:
                summands.append(f"x{index}")
            elif power == 1:
                summands.append(f"T x{index}")
            else:
                summands.append(f"T^{power} x{index}")
        return " + ".join(summands) if summands else "0"


Constants = Tuple[LeKVector, LeKVector]


class KEquation(BaseModel):
    """
    A k-equation p ~ q, optionally with a constant prefix (s + p ~ t + q)
    or a constant suffix (p + s ~ q + t). Both sides share the variables
    x_0..x_n.
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    left: FreeTerm
    right: FreeTerm
    prefix: Optional[Constants] = None
    suffix: Optional[Constants] = None

    @model_validator(mode="before")
    @classmethod
    def _pad_sides(cls, data: Any) -> Any:
        if isinstance(data, dict):
            left, right = data.get("left"), data.get("right")
            if isinstance(left, FreeTerm) and isinstance(right, FreeTerm):
                arity = max(left.arity, right.arity)
                data = {**data, "left": left.padded(arity), "right": right.padded(arity)}
        return data

    @model_validator(mode="after")
    def _check_shape(self) -> "KEquation":
        k = self.k
        if self.left.k != k or self.right.k != k:
            raise ValueError("both sides must be terms at the equation's level")
        if self.left.arity != self.right.arity:
            raise ValueError("both sides must use the same variables")
        if self.prefix is not None and self.suffix is not None:
            raise ValueError("an equation has a prefix or a suffix, not both")
        constants = self.prefix or self.suffix
        if constants is None:
            if self.left.level != k or self.right.level != k:
                raise ValueError(f"without constants both sides must be free {k}-terms")
            return self
        s, t = constants
        if s.k != k or t.k != k:
            raise ValueError("constants must live at the equation's level")
        if max(s.level, self.left.level) != k or max(t.level, self.right.level) != k:
            raise ValueError(f"each side must reach level {k}")
        return self

    @property
    def arity(self) -> int:
        return self.left.arity

    def __str__(self) -> str:
        left, right = str(self.left), str(self.right)
        if self.prefix is not None:
            text = f"s + {left} ~ t + {right}"
            s, t = self.prefix
        elif self.suffix is not None:
            text = f"{left} + s ~ {right} + t"
            s, t = self.suffix
        else:
            return f"{left} ~ {right}"
        return f"{text} ; s={s.key()} ; t={t.key()}"


class Decision(BaseModel):
    """
    Report of a decide run.
    """
    verdict: Verdict
    checked: int = 0
    note: Optional[str] = None

    class Config:
        use_enum_values = True

    def to_json(self) -> Dict[str, Any]:
        payload = {"verdict": self.verdict, "checked": self.checked}
        if self.note:
            payload["note"] = self.note
        return payload
