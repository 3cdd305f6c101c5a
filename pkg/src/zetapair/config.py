"""Scenario configuration: INI files describing a group pair, a
character, probe points, and the checks to run with their parameters.

Gaussian integers are written "a+bi", complex numbers "re+imi"; angle
fractions like "1/3" are exact rationals of a full turn.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import CharacterRep
from .cosets import DEFAULT_COSET_CAP, coset_reps
from .errors import ConfigError
from .geometry import PointH3
from .groups import GroupDescriptor
from .induced import InducedRep, singular_space
from .policy import TruncationPolicy
from .rings import RingElem, parse_ring_literal

KNOWN_CHECKS = (
    "transform-check",
    "zeta-compare",
    "orbital-check",
    "eisenstein-check",
    "omega-check",
    "scatter-algebra",
    "estimate-sums",
)


def parse_complex(text):
    """Parse "2", "-1.5", "3+0.5i", "0.3-0.2i" into a complex number."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty complex literal")
    try:
        if "i" not in s:
            return complex(float(s), 0.0)
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"bad complex literal {text!r}") from exc


@dataclass
class Scenario:
    name: str
    group: GroupDescriptor
    policy: TruncationPolicy
    character_kind: str
    character_level: object
    character_angle: object
    parabolic_only: bool
    probe: PointH3
    checks: list
    check_params: dict = field(default_factory=dict)

    def params(self, check):
        return self.check_params.get(check, {})


@dataclass
class Scene:
    """Constructed objects shared by the checks of one scenario."""

    scenario: Scenario
    pair: object
    chi: object
    rep: object
    singular: object

    @property
    def policy(self):
        return self.scenario.policy


def load_scenario(path):
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    try:
        return _parse_scenario(cp)
    except (configparser.Error, KeyError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_scenario(cp):
    if "scenario" not in cp or "name" not in cp["scenario"]:
        raise ConfigError("missing [scenario] name")
    name = cp["scenario"]["name"].strip()

    if "group_pair" not in cp:
        raise ConfigError("missing [group_pair] section")
    gp = cp["group_pair"]
    ambient = gp.get("ambient", "").strip()
    if ambient not in ("sl2z", "sl2zi"):
        raise ConfigError(f"group_pair.ambient must be sl2z or sl2zi, got {ambient!r}")
    ring = GroupDescriptor.ring_of(ambient)
    level_text = gp.get("level", "").strip()
    if level_text:
        group = GroupDescriptor(ambient, "hecke", parse_ring_literal(level_text, ring))
    else:
        group = GroupDescriptor(ambient)

    if "probe" not in cp:
        raise ConfigError("missing [probe] section")
    pr = cp["probe"]

    policy = TruncationPolicy(
        entry_bound=gp.getint("entry_bound", 5),
        conj_bound=gp.getint("conj_bound", 6),
        stab_bound=gp.getint("stab_bound", 32),
        delta_cutoff=pr.getfloat("delta_cutoff", 20.0),
        norm_cutoff=gp.getfloat("norm_cutoff", 12.0),
        quad_tol=gp.getfloat("quad_tol", 1e-10),
        coset_cap=gp.getint("coset_cap", DEFAULT_COSET_CAP),
        window=gp.get("window", "delta-ball").strip(),
        threads=gp.getint("threads", 1),
    )

    kind, level, angle = "trivial", None, None
    parabolic_only = False
    if "character" in cp:
        ch = cp["character"]
        kind_text = ch.get("kind", "trivial").strip()
        if kind_text in ("congruence", "congruence-character"):
            kind = "congruence-character"
            level = parse_ring_literal(ch["level"], ring)
            angle = Fraction(ch["generator_angle"].strip())
        elif kind_text == "trivial":
            kind = "trivial"
        else:
            raise ConfigError(f"unknown character kind {kind_text!r}")
        parabolic_only = ch.getboolean("parabolic_only_singularity", False)

    z = parse_complex(pr.get("omega", "0"))
    y = pr.getfloat("height", 1.0)
    if y <= 0:
        raise ConfigError("probe.height must be positive")
    probe = PointH3(z, y)
    group.validate_point(probe, tol=0.0)

    checks = []
    if "checks" in cp and cp["checks"].get("run", "").strip():
        for item in cp["checks"]["run"].replace(",", " ").split():
            if item not in KNOWN_CHECKS:
                raise ConfigError(f"unknown check {item!r}")
            checks.append(item)

    check_params = {}
    for check in KNOWN_CHECKS:
        section = f"check.{check}"
        if section in cp:
            check_params[check] = dict(cp[section])
    for section in cp.sections():
        if section.startswith("check.") and section[6:] not in KNOWN_CHECKS:
            raise ConfigError(f"unknown check section [{section}]")

    return Scenario(
        name=name,
        group=group,
        policy=policy,
        character_kind=kind,
        character_level=level,
        character_angle=angle,
        parabolic_only=parabolic_only,
        probe=probe,
        checks=checks,
        check_params=check_params,
    )


def build_scene(scenario):
    pair = coset_reps(
        scenario.group,
        coset_cap=scenario.policy.coset_cap,
        stab_bound=scenario.policy.stab_bound,
    )
    if scenario.character_kind == "trivial":
        chi = CharacterRep("trivial")
    else:
        chi = CharacterRep(
            "congruence-character", scenario.character_level, scenario.character_angle
        )
    rep = InducedRep(pair, chi)
    ss = singular_space(rep, parabolic_only=scenario.parabolic_only)
    return Scene(scenario=scenario, pair=ss.pair, chi=chi, rep=ss.rep, singular=ss)
