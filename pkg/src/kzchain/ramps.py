"""Transverse-field ramp schedules.

A ramp drives the field g from a large initial value g_start > 1 down to
g = 0 at constant rate 1/tau_q.  The "waiting" variant pauses at a plateau
value 0 < g_w < 1 inside the ferromagnetic phase for an extra time
t_w = w * tau_q before resuming with the same slope.  Time is parametrized
so that g = 0 (where observables are evaluated) is reached at the end of
the domain: t_end = 0 for a plain linear ramp and t_end = t_w for a
waiting ramp.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path


@dataclass(frozen=True)
class RampSpec:
    """Piecewise-linear schedule of the transverse field.

    Parameters
    ----------
    kind : str
        Either ``"linear"`` or ``"waiting"``.
    tau_q : float
        Quench time (inverse sweep rate), > 0.
    g_w : float
        Plateau field for the waiting kind, in (0, 1).
    w : float
        Waiting coefficient >= 0; the plateau lasts t_w = w * tau_q.
    g_start : float
        Field at the start of the schedule, > 1.
    """

    kind: str = "linear"
    tau_q: float = 16.0
    g_w: float = 0.5
    w: float = 0.0
    g_start: float = 10.0

    def __post_init__(self):
        if self.kind not in ("linear", "waiting"):
            raise ValueError(f"unknown ramp kind {self.kind!r}")
        if not self.tau_q > 0:
            raise ValueError("tau_q must be positive")
        if not self.g_start > 1:
            raise ValueError("g_start must exceed the critical field g=1")
        if self.kind == "waiting":
            if not 0 < self.g_w < 1:
                raise ValueError("plateau field g_w must lie in (0, 1)")
            if self.w < 0:
                raise ValueError("waiting coefficient w must be >= 0")

    @property
    def t_wait(self) -> float:
        """Duration of the plateau, w * tau_q (zero for a linear ramp)."""
        return self.w * self.tau_q if self.kind == "waiting" else 0.0

    @property
    def t_start(self) -> float:
        return -self.g_start * self.tau_q

    @property
    def t_end(self) -> float:
        return self.t_wait

    def segments(self) -> list[tuple[float, float, float | None]]:
        """Domain pieces as (t_from, t_to, t_offset).

        Descending pieces satisfy g(t) = -(t - t_offset)/tau_q; a plateau
        piece is flagged by t_offset = None.
        """
        if self.kind == "linear" or self.w == 0.0:
            return [(self.t_start, self.t_end, 0.0)]
        t_hit = -self.g_w * self.tau_q
        return [
            (self.t_start, t_hit, 0.0),
            (t_hit, t_hit + self.t_wait, None),
            (t_hit + self.t_wait, self.t_end, self.t_wait),
        ]

    def value(self, t: float) -> float:
        """Field g(t); raises for t outside [t_start, t_end]."""
        if t < self.t_start - 1e-12 or t > self.t_end + 1e-12:
            raise ValueError(
                f"t={t} outside ramp domain [{self.t_start}, {self.t_end}]"
            )
        if self.kind == "linear" or self.w == 0.0:
            return -t / self.tau_q
        t_hit = -self.g_w * self.tau_q
        if t <= t_hit:
            return -t / self.tau_q
        if t <= t_hit + self.t_wait:
            return self.g_w
        return -(t - self.t_wait) / self.tau_q

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RampSpec":
        return cls(**json.loads(text))

    def to_config(self) -> str:
        """Flat ``key = value`` representation."""
        return "".join(f"{k} = {v}\n" for k, v in sorted(asdict(self).items()))

    @classmethod
    def from_config(cls, text: str) -> "RampSpec":
        fields = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, raw = line.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key == "kind":
                fields[key] = raw
            else:
                fields[key] = float(raw)
        return cls(**fields)

    def save(self, path: str | Path) -> None:
        path = Path(path)
        if path.suffix == ".json":
            path.write_text(self.to_json())
        else:
            path.write_text(self.to_config())

    @classmethod
    def load(cls, path: str | Path) -> "RampSpec":
        path = Path(path)
        text = path.read_text()
        if path.suffix == ".json":
            return cls.from_json(text)
        return cls.from_config(text)


def ramp_value(ramp: RampSpec, t) -> float:
    """Field value g(t) of a ramp; accepts scalars or array-likes."""
    try:
        return ramp.value(float(t))
    except TypeError:
        import numpy as np

        return np.array([ramp.value(float(ti)) for ti in np.asarray(t).ravel()])
