"""Text encodings for scores, identification functions, functionals, and
distributions, shared by the CLI and suite files.

Grammar: ``family[:key=value...][@mode:transform]``, e.g. ``se@both:log``,
``gpl:tau=0.9:g=log``, ``expectile:tau=0.75:phi=square@both:power(0.5)``.
Transforms are ``name`` or ``name(p1,p2,...)``; distributions likewise:
``normal(0,1)``, ``empirical(1,2,3)``.
"""

from __future__ import annotations

import shlex

from .errors import SpecParseError
from .functionals import FunctionalSpec
from .identification import IdentSpec
from .scoring import ScoreSpec, TransformMode, convex_generator
from .transforms import Bijection, catalog
from . import distributions as dist_mod


def parse_bijection(text: str) -> Bijection:
    text = text.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise SpecParseError(f"malformed transform spec {text!r}")
        name, args = text[:-1].split("(", 1)
        try:
            params = [float(a) for a in args.split(",")] if args.strip() else []
        except ValueError as exc:
            raise SpecParseError(f"bad transform parameters in {text!r}: {exc}") from exc
    else:
        name, params = text, []
    try:
        return catalog(name, params)
    except Exception as exc:
        raise SpecParseError(f"bad transform spec {text!r}: {exc}") from exc


def format_bijection(bij: Bijection) -> str:
    return bij.label.replace(", ", ",")


def _split_mode(text: str):
    if "@" not in text:
        return text, TransformMode.none()
    head, mode_part = text.split("@", 1)
    if ":" not in mode_part:
        raise SpecParseError(f"transform mode needs 'mode:transform', got {mode_part!r}")
    mode_name, g_text = mode_part.split(":", 1)
    g = parse_bijection(g_text)
    try:
        if mode_name == "both":
            return head, TransformMode.both(g)
        if mode_name == "prediction":
            return head, TransformMode.prediction_only(g)
        if mode_name == "realization":
            return head, TransformMode.realization_only(g)
    except Exception as exc:
        raise SpecParseError(f"bad transform mode {mode_part!r}: {exc}") from exc
    raise SpecParseError(f"unknown transform mode {mode_name!r}")


def _split_params(head: str):
    parts = head.split(":")
    family, kv = parts[0], {}
    for part in parts[1:]:
        if "=" not in part:
            raise SpecParseError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        kv[key.strip()] = value.strip()
    return family.strip(), kv


def _pop_tau(kv, text):
    if "tau" not in kv:
        return None
    try:
        return float(kv.pop("tau"))
    except ValueError as exc:
        raise SpecParseError(f"bad tau in {text!r}") from exc


def parse_score(text: str) -> ScoreSpec:
    head, mode = _split_mode(text.strip())
    family, kv = _split_params(head)
    tau = _pop_tau(kv, text)
    phi = convex_generator(kv.pop("phi")) if "phi" in kv else None
    g_inner = parse_bijection(kv.pop("g")) if "g" in kv else None
    if kv:
        raise SpecParseError(f"unknown score options {sorted(kv)} in {text!r}")
    try:
        return ScoreSpec(family, tau=tau, phi=phi, g_inner=g_inner, transform=mode)
    except Exception as exc:
        raise SpecParseError(f"bad score spec {text!r}: {exc}") from exc


def format_score(spec: ScoreSpec) -> str:
    parts = [spec.family]
    if spec.tau is not None:
        parts.append(f"tau={spec.tau:g}")
    if spec.family in ("expectile", "bregman") and spec.phi is not None:
        parts.append(f"phi={spec.phi.name}")
    if spec.g_inner is not None:
        parts.append(f"g={format_bijection(spec.g_inner)}")
    out = ":".join(parts)
    if spec.transform.mode != "none":
        out += f"@{spec.transform.mode}:{format_bijection(spec.transform.g)}"
    return out


def parse_ident(text: str) -> IdentSpec:
    head, mode = _split_mode(text.strip())
    family, kv = _split_params(head)
    tau = _pop_tau(kv, text)
    if kv:
        raise SpecParseError(f"unknown identification options {sorted(kv)} in {text!r}")
    try:
        return IdentSpec(family, tau=tau, transform=mode)
    except Exception as exc:
        raise SpecParseError(f"bad identification spec {text!r}: {exc}") from exc


def format_ident(spec: IdentSpec) -> str:
    out = spec.family
    if spec.tau is not None:
        out += f":tau={spec.tau:g}"
    if spec.transform.mode != "none":
        out += f"@{spec.transform.mode}:{format_bijection(spec.transform.g)}"
    return out


def parse_functional(text: str) -> FunctionalSpec:
    head, mode = _split_mode(text.strip())
    if mode.mode != "none":
        raise SpecParseError(f"functionals take no transform mode: {text!r}")
    kind, kv = _split_params(head)
    tau = _pop_tau(kv, text)
    g = parse_bijection(kv.pop("g")) if "g" in kv else None
    if kv:
        raise SpecParseError(f"unknown functional options {sorted(kv)} in {text!r}")
    try:
        return FunctionalSpec(kind, tau=tau, g=g)
    except Exception as exc:
        raise SpecParseError(f"bad functional spec {text!r}: {exc}") from exc


def format_functional(spec: FunctionalSpec) -> str:
    parts = [spec.kind]
    if spec.tau is not None:
        parts.append(f"tau={spec.tau:g}")
    if spec.g is not None:
        parts.append(f"g={format_bijection(spec.g)}")
    return ":".join(parts)


_DIST_ARITY = {"normal": 2, "lognormal": 2, "exponential": 1, "uniform": 2}


def parse_dist(text: str):
    text = text.strip()
    if "(" not in text or not text.endswith(")"):
        raise SpecParseError(f"distribution spec needs parameters: {text!r}")
    name, args = text[:-1].split("(", 1)
    name = name.strip().lower()
    try:
        params = [float(a) for a in args.split(",")] if args.strip() else []
    except ValueError as exc:
        raise SpecParseError(f"bad distribution parameters in {text!r}: {exc}") from exc
    try:
        if name == "normal":
            return dist_mod.Normal(*params)
        if name == "lognormal":
            return dist_mod.Lognormal(*params)
        if name == "exponential":
            return dist_mod.Exponential(*params)
        if name == "uniform":
            return dist_mod.Uniform(*params)
        if name == "empirical":
            return dist_mod.Empirical(tuple(params))
    except TypeError as exc:
        raise SpecParseError(
            f"{name} expects {_DIST_ARITY.get(name, '?')} parameter(s): {exc}") from exc
    except Exception as exc:
        raise SpecParseError(f"bad distribution spec {text!r}: {exc}") from exc
    raise SpecParseError(f"unknown distribution {name!r}")


def format_dist(dist) -> str:
    if isinstance(dist, dist_mod.Normal):
        return f"normal({dist.mu:g},{dist.sigma:g})"
    if isinstance(dist, dist_mod.Lognormal):
        return f"lognormal({dist.mu:g},{dist.sigma:g})"
    if isinstance(dist, dist_mod.Exponential):
        return f"exponential({dist.rate:g})"
    if isinstance(dist, dist_mod.Uniform):
        return f"uniform({dist.lo:g},{dist.hi:g})"
    if isinstance(dist, dist_mod.Empirical):
        return "empirical(" + ",".join(f"{v:g}" for v in dist.values) + ")"
    raise SpecParseError(f"unknown distribution object {dist!r}")


def parse_suite_line(line: str) -> dict:
    """One suite check: whitespace-separated key=value tokens."""
    fields = {}
    for token in shlex.split(line):
        if "=" not in token:
            raise SpecParseError(f"expected key=value token, got {token!r}")
        key, value = token.split("=", 1)
        if key in fields:
            raise SpecParseError(f"duplicate key {key!r}")
        fields[key] = value
    return fields
