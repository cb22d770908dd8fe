"""Verdicts and cost reports shared by the analysis modules."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Union

INF = "inf"


@dataclass
class Verdict:
    """A yes/no answer with a certificate.

    ``value`` is ``None`` when a search bound was exhausted without an answer.
    ``exact`` is false for answers that only hold up to ``depth``.
    ``replay`` lists module calls with expected results that re-check the witness.
    """

    value: Optional[bool]
    exact: bool = True
    depth: Optional[int] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    replay: List[Dict[str, Any]] = field(default_factory=list)

    def __bool__(self):
        raise TypeError("use verdict.value; a verdict may be bounded or unknown")

    @property
    def label(self) -> str:
        word = {True: "true", False: "false", None: "unknown"}[self.value]
        if self.exact:
            return word
        return f"{word} (bounded-confidence, depth {self.depth})"

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Verdict":
        return cls(
            value=d["value"],
            exact=d["exact"],
            depth=d.get("depth"),
            witness=d.get("witness", {}),
            replay=d.get("replay", []),
        )


@dataclass
class CostReport:
    """Result of a cost computation; ``cost`` is an int, ``"inf"``, or ``None`` if undecided."""

    B: List[str]
    x: str
    cost: Union[int, str, None]
    alpha: Optional[str] = None
    gamma: Optional[str] = None
    exact: bool = True
    depth: Optional[int] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    replay: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def infinite(self) -> bool:
        return self.cost == INF

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "CostReport":
        return cls(**d)
