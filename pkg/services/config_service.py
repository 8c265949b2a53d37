"""Experiment configuration loading, defaults and hashing."""

from typing import Optional, Dict, Any
import copy
import hashlib
import json
import logging
import os

from orbitlab.errors import ConfigError, ParseError

logger = logging.getLogger(__name__)

MAP_KINDS = ("homogeneous", "monomial", "named")


def canonical_json(value: Any) -> str:
    """Sorted keys, no whitespace: the form that gets hashed."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def sha256_hex(value: Any) -> str:
    return hashlib.sha256(canonical_json(value).encode("utf-8")).hexdigest()


class ConfigService:
    """Service for loading and normalizing experiment configs."""

    def load(self, path: str) -> Dict[str, Any]:
        """
        Read a JSON config file.

        Args:
            path: Path to the config document

        Returns:
            Raw config dictionary

        Raises:
            ConfigError: file missing or not an object
            ParseError: malformed JSON (with line and column)
        """
        if not os.path.exists(path):
            raise ConfigError(f"Config file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
        return self.loads(text)

    def loads(self, text: str) -> Dict[str, Any]:
        try:
            config = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from e
        if not isinstance(config, dict):
            raise ConfigError("Config must be a JSON object")
        return config

    def get_default_params(self) -> Dict[str, Any]:
        """
        Get default parameter structure.

        Returns:
            Default parameters dictionary
        """
        return {
            "horizon": 12,  # N for degree sequences and orbits
            "d_max": 3,  # interpolation degree cap
            "tol": 1e-9,  # spectral interval width
            "slack": 0.05,  # relative slack for alpha <= lambda_1
            "eps": 0.05,  # search threshold (1 - eps) * lambda_1
            "m_max": 3,  # powers checked by verify
            "samples": 100,  # seeds for search, matrices for verify
            "seed": 0,  # rng seed
            "seeds": [],  # explicit seed points; sampled when empty
            "indices": None,  # dynamical degree indices; all supported when None
            "via_compose": False,  # monomial degree sequences through composition
            "sampler": {
                "kind": None,  # 'torus' or 'projective'; chosen from the map when None
                "bound": 9,
            },
            "verify": {
                "dim": 3,
                "entry_bound": 2,
                "horizon": 100,
            },
            "gap": None,  # {"c": ..., "m": ..., "beta": ...}
            "w": None,  # form whose return set is analyzed by the orbit command
        }

    def merge_with_defaults(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Merge a raw config with defaults, ensuring all fields are present.

        Args:
            config: Raw config dictionary

        Returns:
            Merged config dictionary
        """
        defaults = self.get_default_params()
        params = config.get("params") or {}
        if not isinstance(params, dict):
            raise ConfigError("'params' must be an object")
        merged_params = copy.deepcopy(defaults)
        merged_params.update(params)

        # Ensure nested dictionaries are properly merged
        for key in ("sampler", "verify"):
            if key in params:
                if not isinstance(params[key], dict):
                    raise ConfigError(f"'params.{key}' must be an object")
                merged_params[key] = {**defaults[key], **params[key]}

        merged = {
            "map": config.get("map"),
            "params": merged_params,
            "outputs": dict(config.get("outputs") or {}),
        }
        self.validate(merged)
        return merged

    def validate(self, config: Dict[str, Any]) -> None:
        desc = config.get("map")
        if desc is not None:
            if not isinstance(desc, dict) or desc.get("kind") not in MAP_KINDS:
                raise ConfigError(f"'map.kind' must be one of {MAP_KINDS}")
        params = config["params"]
        for key in ("horizon", "d_max", "m_max", "samples"):
            if not isinstance(params[key], int) or params[key] < 1:
                raise ConfigError(f"'params.{key}' must be a positive integer")
        for key in ("tol", "slack", "eps"):
            if not isinstance(params[key], (int, float)) or params[key] <= 0:
                raise ConfigError(f"'params.{key}' must be positive")
        if not isinstance(params["seed"], int) or not 0 <= params["seed"] < 2**64:
            raise ConfigError("'params.seed' must be an unsigned 64-bit integer")
        if not isinstance(params["seeds"], list):
            raise ConfigError("'params.seeds' must be a list of points")
        gap = params.get("gap")
        if gap is not None and not {"c", "m", "beta"} <= set(gap):
            raise ConfigError("'params.gap' needs c, m and beta")

    def with_seed(self, config: Dict[str, Any], seed: Optional[int]) -> Dict[str, Any]:
        """Copy of a merged config with the rng seed overridden."""
        if seed is None:
            return config
        if not 0 <= seed < 2**64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        updated = copy.deepcopy(config)
        updated["params"]["seed"] = seed
        return updated

    def config_hash(self, config: Dict[str, Any]) -> str:
        return sha256_hex(config)

    def map_hash(self, config: Dict[str, Any]) -> Optional[str]:
        desc = config.get("map")
        return sha256_hex(desc) if desc is not None else None
