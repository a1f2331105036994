"""Flat key = value documents describing a state for the CLI to build.

Units are ħ = m = 1 unless `hbar`/`mass` override them.  Unknown keys are
rejected with line context; the exact schema is documented in the README.

Example::

    # three-wave packet, side weight 1/2
    kind = three_wave_packet
    L = 6.283185307179586
    n = 1
    b = 0.5
"""

import math

import numpy as np

from .catalog import (
    ElementaryParams,
    ThreeWavePacketParams,
    bloch_pair_state,
    half_box_state,
    plane_wave_state,
    sine_test_state,
    three_wave_packet,
)
from .errors import SpecFormatError
from .states import (
    BoxDomain,
    Constants,
    DEFAULT_K_MAX,
    normalized_bloch_sine,
    normalized_plane_waves,
    project_to_sine,
)

_COMMON_KEYS = {"kind", "L", "hbar", "mass"}

# Required / optional keys per kind (beyond the common ones).
KIND_KEYS = {
    "plane_waves": ({"modes"}, set()),
    "bloch_sine": ({"coeffs", "p_bar"}, set()),
    "three_wave_packet": ({"n", "b"}, set()),
    "elementary": ({"n", "k"}, set()),
    "half_box": ({"n", "k"}, set()),
    "bloch_pair": ({"n", "k", "sign"}, set()),
    "plane_wave": ({"n"}, set()),
    "sine_test": (set(), set()),
    "profile": ({"profile"}, {"p_bar", "K", "boost", "k", "center", "width"}),
}

PROFILE_NAMES = ("triangle", "sine", "bump")


def parse_spec_text(text, source="<spec>"):
    """Parse a spec document into a validated {key: raw string} mapping."""
    entries = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFormatError(
                f"{source}:{line_no}: expected 'key = value', got {raw.strip()!r}",
                line_no=line_no,
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise SpecFormatError(
                f"{source}:{line_no}: empty key or value in {raw.strip()!r}",
                line_no=line_no, key=key or None,
            )
        if key in entries:
            raise SpecFormatError(
                f"{source}:{line_no}: duplicate key {key!r}", line_no=line_no, key=key
            )
        entries[key] = (value, line_no)

    if "kind" not in entries:
        raise SpecFormatError(f"{source}: missing required key 'kind'", key="kind")
    kind = entries["kind"][0]
    if kind not in KIND_KEYS:
        raise SpecFormatError(
            f"{source}:{entries['kind'][1]}: unknown kind {kind!r}; "
            f"expected one of {sorted(KIND_KEYS)}",
            line_no=entries["kind"][1], key="kind",
        )
    required, optional = KIND_KEYS[kind]
    allowed = _COMMON_KEYS | required | optional
    for key, (_, line_no) in entries.items():
        if key not in allowed:
            raise SpecFormatError(
                f"{source}:{line_no}: key {key!r} is not allowed for kind {kind!r} "
                f"(allowed: {sorted(allowed)})",
                line_no=line_no, key=key,
            )
    missing = (required | {"L"}) - set(entries)
    if missing:
        raise SpecFormatError(
            f"{source}: kind {kind!r} is missing required keys {sorted(missing)}",
            key=sorted(missing)[0],
        )
    return {key: value for key, (value, _) in entries.items()}


def load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec_text(fh.read(), source=str(path))


def _as_float(spec, key):
    try:
        return float(spec[key])
    except ValueError as exc:
        raise SpecFormatError(f"key {key!r}: not a number: {spec[key]!r}", key=key) from exc


def _as_int(spec, key):
    try:
        return int(spec[key])
    except ValueError as exc:
        raise SpecFormatError(f"key {key!r}: not an integer: {spec[key]!r}", key=key) from exc


def _as_pairs(spec, key):
    """Parse 'idx:amp, idx:amp, ...' with complex amplitudes (j notation)."""
    pairs = []
    for item in spec[key].split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise SpecFormatError(
                f"key {key!r}: expected 'index:amplitude', got {item!r}", key=key
            )
        idx, amp = item.split(":", 1)
        try:
            pairs.append((int(idx.strip()), complex(amp.strip().replace(" ", ""))))
        except ValueError as exc:
            raise SpecFormatError(f"key {key!r}: bad entry {item!r}", key=key) from exc
    if not pairs:
        raise SpecFormatError(f"key {key!r}: no entries", key=key)
    return pairs


def _profile_callable(spec, length):
    name = spec["profile"]
    if name not in PROFILE_NAMES:
        raise SpecFormatError(
            f"unknown profile {name!r}; expected one of {PROFILE_NAMES}", key="profile"
        )
    boost = float(spec.get("boost", 0.0))
    if name == "triangle":
        norm = math.sqrt(12.0 / length**3)

        def shape(x):
            return norm * np.minimum(x, length - x)

    elif name == "sine":
        k = int(spec.get("k", 1))

        def shape(x):
            return math.sqrt(2.0 / length) * np.sin(k * np.pi * x / length)

    else:  # bump: smooth, vanishes exactly at both ends
        center = float(spec.get("center", 0.5 * length))
        width = float(spec.get("width", 0.125 * length))
        xs = np.linspace(0.0, length, 20001)
        raw = np.sin(np.pi * xs / length) * np.exp(-(((xs - center) / width) ** 2))
        norm = 1.0 / math.sqrt(np.trapezoid(raw * raw, xs))

        def shape(x):
            return norm * np.sin(np.pi * x / length) * np.exp(-(((x - center) / width) ** 2))

    if boost == 0.0:
        return shape
    return lambda x: np.exp(1j * boost * np.asarray(x, dtype=float)) * shape(x)


def build_state(spec, k_max=None):
    """Materialize (state, Constants) from a parsed spec mapping."""
    consts = Constants(
        hbar=float(spec.get("hbar", 1.0)), mass=float(spec.get("mass", 1.0))
    )
    kind = spec["kind"]
    length = _as_float(spec, "L")
    if kind == "plane_waves":
        state = normalized_plane_waves(
            BoxDomain(length=length, x_lo=-0.5 * length), _as_pairs(spec, "modes")
        )
    elif kind == "bloch_sine":
        state = normalized_bloch_sine(
            BoxDomain(length=length), _as_float(spec, "p_bar"), _as_pairs(spec, "coeffs")
        )
    elif kind == "three_wave_packet":
        state = three_wave_packet(
            ThreeWavePacketParams(n=_as_int(spec, "n"), b=_as_float(spec, "b"), length=length),
            consts,
        )
    elif kind in ("elementary", "half_box"):
        state = half_box_state(
            ElementaryParams(n=_as_int(spec, "n"), k=_as_int(spec, "k"), length=length), consts
        )
    elif kind == "bloch_pair":
        state = bloch_pair_state(
            ElementaryParams(
                n=_as_int(spec, "n"), k=_as_int(spec, "k"), length=length, sign=spec["sign"]
            ),
            consts,
        )
    elif kind == "plane_wave":
        state = plane_wave_state(_as_int(spec, "n"), length, consts)
    elif kind == "sine_test":
        state = sine_test_state(length, consts)
    elif kind == "profile":
        profile = _profile_callable(spec, length)
        p_bar = spec.get("p_bar", "auto")
        if p_bar != "auto":
            p_bar = float(p_bar)
        state = project_to_sine(
            profile, length, p_bar,
            k_max=k_max or int(spec.get("K", DEFAULT_K_MAX)), consts=consts,
        )
    else:  # pragma: no cover - parse_spec_text already rejects unknown kinds
        raise SpecFormatError(f"unknown kind {kind!r}", key="kind")
    return state, consts
