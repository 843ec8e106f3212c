"""Published parameter sets, reference key sizes and named presets."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamError
from .schemes import SchemeParams


@dataclass(frozen=True)
class ParamRegistryEntry:
    scheme: str
    m: int
    n: int
    k: int
    l: int
    lam: int
    q: int
    public_key_bytes: int
    information_rate: float
    security_bits: int

    @property
    def name(self) -> str:
        return f"{self.scheme}-{self.security_bits}"

    def params(self) -> SchemeParams:
        return SchemeParams(self.scheme, self.q, self.m, self.n, self.k, self.lam, self.l)


TABLE1 = (
    ParamRegistryEntry("loidreau", 37, 37, 17, 0, 2, 3, 4611, 0.46, 128),
    ParamRegistryEntry("loidreau", 45, 45, 21, 0, 2, 3, 8425, 0.47, 192),
    ParamRegistryEntry("loidreau", 52, 52, 24, 0, 2, 3, 12857, 0.46, 256),
    ParamRegistryEntry("mod1", 42, 42, 23, 2, 2, 3, 3670, 0.50, 128),
    ParamRegistryEntry("mod1", 48, 48, 25, 1, 2, 3, 5478, 0.50, 192),
    ParamRegistryEntry("mod1", 56, 56, 29, 1, 2, 3, 8698, 0.50, 256),
    ParamRegistryEntry("mod2", 44, 44, 30, 1, 2, 3, 3661, 0.68, 128),
    ParamRegistryEntry("mod2", 51, 51, 33, 1, 2, 3, 6002, 0.65, 192),
    ParamRegistryEntry("mod2", 57, 57, 35, 1, 2, 3, 8696, 0.61, 256),
)

# Public-key sizes in bytes at the 128/192/256-bit levels, for comparison only.
TABLE2 = {
    "HQC": (2249, 4522, 7245),
    "BIKE": (1540, 3082, 5121),
    "Classic McEliece": (261120, 524160, 1044992),
    "NTS-KEM": (319488, 929760, 1419704),
    "mod1": (3693, 5478, 8698),
    "mod2": (3661, 6002, 8696),
}
SECURITY_LEVELS = (128, 192, 256)

# Reduced-size instances (q = 2) where the structural analysis runs in seconds.
DEMO_PRESETS = {
    "loidreau-demo": SchemeParams("loidreau", 2, 24, 24, 13, 2, 0),
    "mod1-demo": SchemeParams("mod1", 2, 28, 28, 15, 2, 1),
    "mod2-demo": SchemeParams("mod2", 2, 28, 28, 16, 2, 1),
}


def table2_size(scheme: str, level: int) -> int:
    return TABLE2[scheme][SECURITY_LEVELS.index(level)]


def preset_names():
    return [e.name for e in TABLE1] + list(DEMO_PRESETS)


def registry_entry(name: str) -> ParamRegistryEntry | None:
    for e in TABLE1:
        if e.name == name:
            return e
    return None


def preset(name: str) -> SchemeParams:
    entry = registry_entry(name)
    if entry is not None:
        return entry.params()
    if name in DEMO_PRESETS:
        return DEMO_PRESETS[name]
    raise ParamError(f"unknown preset {name!r}; choose from {', '.join(preset_names())}")
