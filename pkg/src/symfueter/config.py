"""Size caps for the exact pipelines, overridable through the environment."""

import os
from dataclasses import dataclass

ENV_PREFIX = "SYMFUETER_"


class CapExceeded(ValueError):
    """Requested degree or dimension is beyond the configured cap."""


def _env_int(name, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Caps:
    max_ell: int = 12
    max_n: int = 4
    max_m: int = 8
    max_p: int = 40

    @classmethod
    def from_env(cls):
        d = cls()
        return cls(
            max_ell=_env_int("MAX_ELL", d.max_ell),
            max_n=_env_int("MAX_N", d.max_n),
            max_m=_env_int("MAX_M", d.max_m),
            max_p=_env_int("MAX_P", d.max_p),
        )

    def check(self, ell=None, n=None, m=None, p=None):
        for label, value, cap in (
            ("ell", ell, self.max_ell),
            ("n", n, self.max_n),
            ("m", m, self.max_m),
            ("p", p, self.max_p),
        ):
            if value is not None and value > cap:
                raise CapExceeded(
                    f"{label}={value} exceeds cap {cap} "
                    f"(raise it with {ENV_PREFIX}MAX_{label.upper()})"
                )
