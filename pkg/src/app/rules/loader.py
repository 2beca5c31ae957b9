import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from app.rules.rule_set import ACCEPT, Accept, Action, FormatMap, PosMatcher, RuleNode, RuleSet, VerbExpansion
from config.default import (
    DEFAULT_ALLOWED_DEPS,
    DEFAULT_CHAIN_DEPS,
    DEFAULT_MAX_DEPTH,
    DEFAULT_RULES_PATH,
    KNOWN_DEPENDENCIES,
)
from domain.errors import RuleValidationError
from domain.models import MeasurementFormat
from utils.logger import setup_logger

logger = setup_logger(__name__)

NODE_KEYS = {"enhanced", "connectors", "formats"}
MATCHER_KEYS = {"pos_in", "pos_equals"}
ACTION_KEYS = {"allowedDeps", "chainDeps", "maxDepth", "includeSelf"}
FORMAT_NAMES = {f.value: f for f in MeasurementFormat}


class _RuleParser:
    """Validating parser for the dependency pattern file; every error carries its JSON path."""

    def __init__(self, allow_unknown_deps: bool = False):
        self.allow_unknown_deps = allow_unknown_deps

    def _check_dep(self, label: Any, path: str) -> str:
        if not isinstance(label, str) or not label:
            raise RuleValidationError("dependency label must be a non-empty string", path)
        base = label.split(":", 1)[0]
        if base not in KNOWN_DEPENDENCIES and not self.allow_unknown_deps:
            raise RuleValidationError(f"unknown dependency type '{base}' (use --allow-unknown-deps)", path)
        return label

    def _dep_list(self, value: Any, path: str, allow_empty: bool) -> tuple:
        if not isinstance(value, list):
            raise RuleValidationError("expected a list of dependency labels", path)
        if not value and not allow_empty:
            raise RuleValidationError("list must not be empty", path)
        return tuple(self._check_dep(item, f"{path}[{i}]") for i, item in enumerate(value))

    def action(self, value: Any, path: str) -> Action:
        if value is None:
            return ACCEPT
        if not isinstance(value, dict):
            raise RuleValidationError("action must be null or an object", path)
        unknown = set(value) - ACTION_KEYS
        if unknown:
            raise RuleValidationError(f"unknown action keys {sorted(unknown)}", path)
        allowed = self._dep_list(value.get("allowedDeps", list(DEFAULT_ALLOWED_DEPS)),
                                 f"{path}.allowedDeps", allow_empty=False)
        chain = self._dep_list(value.get("chainDeps", list(DEFAULT_CHAIN_DEPS)),
                               f"{path}.chainDeps", allow_empty=True)
        max_depth = value.get("maxDepth", DEFAULT_MAX_DEPTH)
        if not isinstance(max_depth, int) or isinstance(max_depth, bool) or max_depth < 1:
            raise RuleValidationError(f"maxDepth must be an integer >= 1, got {max_depth!r}", f"{path}.maxDepth")
        include_self = value.get("includeSelf", False)
        if not isinstance(include_self, bool):
            raise RuleValidationError("includeSelf must be a boolean", f"{path}.includeSelf")
        return VerbExpansion(allowed_deps=allowed, chain_deps=chain, max_depth=max_depth,
                             include_self=include_self)

    def _pos_map(self, value: Any, path: str) -> Dict[str, Action]:
        if not isinstance(value, dict):
            raise RuleValidationError("expected an object mapping POS tags to actions", path)
        result = {}
        for key, action in value.items():
            if not key:
                raise RuleValidationError("POS key must be non-empty", path)
            result[key] = self.action(action, f"{path}.{key}")
        return result

    def matcher(self, value: Any, path: str) -> PosMatcher:
        if not isinstance(value, dict):
            raise RuleValidationError("expected an object with pos_in and/or pos_equals", path)
        unknown = set(value) - MATCHER_KEYS
        if unknown:
            raise RuleValidationError(f"unknown matcher keys {sorted(unknown)}", path)
        pos_in = self._pos_map(value.get("pos_in", {}), f"{path}.pos_in")
        pos_equals = self._pos_map(value.get("pos_equals", {}), f"{path}.pos_equals")
        if not pos_in and not pos_equals:
            raise RuleValidationError("empty POS matcher", path)
        for tag in pos_equals:
            shadowing = [prefix for prefix in pos_in if tag.startswith(prefix)]
            if shadowing:
                raise RuleValidationError(
                    f"pos_equals key '{tag}' overlaps pos_in prefix '{shadowing[0]}'", f"{path}.pos_equals.{tag}"
                )
        return PosMatcher(pos_in=pos_in, pos_equals=pos_equals)

    def formats(self, value: Any, path: str) -> FormatMap:
        if not isinstance(value, dict) or not value:
            raise RuleValidationError("expected a non-empty object keyed by measurement format", path)
        result = {}
        for key, matcher in value.items():
            fmt = FORMAT_NAMES.get(key)
            if fmt is None:
                raise RuleValidationError(
                    f"unknown format '{key}' (expected one of {sorted(FORMAT_NAMES)})", f"{path}.{key}"
                )
            result[fmt] = self.matcher(matcher, f"{path}.{key}")
        return result

    def node(self, value: Any, path: str) -> RuleNode:
        if not isinstance(value, dict):
            raise RuleValidationError("rule entry must be an object", path)
        unknown = set(value) - NODE_KEYS
        if unknown:
            raise RuleValidationError(f"unknown keys {sorted(unknown)}", path)
        enhanced = value.get("enhanced", False)
        if not isinstance(enhanced, bool):
            raise RuleValidationError("'enhanced' must be a boolean", f"{path}.enhanced")
        if enhanced:
            if "formats" in value:
                raise RuleValidationError("enhanced entries must use 'connectors', not 'formats'", path)
            connectors = value.get("connectors")
            if not isinstance(connectors, dict) or not connectors:
                raise RuleValidationError("enhanced entries need a non-empty 'connectors' object",
                                          f"{path}.connectors")
            return RuleNode(enhanced=True, connectors={
                word: self.formats(formats, f"{path}.connectors.{word}") for word, formats in connectors.items()
            })
        if "connectors" in value:
            raise RuleValidationError("non-enhanced entries must use 'formats', not 'connectors'", path)
        if "formats" not in value:
            raise RuleValidationError("missing 'formats'", path)
        return RuleNode(enhanced=False, formats=self.formats(value["formats"], f"{path}.formats"))

    def rule_set(self, value: Any) -> RuleSet:
        if not isinstance(value, dict):
            raise RuleValidationError("rule file must be a JSON object keyed by dependency type")
        nodes = {}
        for base_type, node in value.items():
            path = f"$.{base_type}"
            self._check_dep(base_type, path)
            if ":" in base_type:
                raise RuleValidationError("top-level keys are base types; put connectors under 'connectors'", path)
            nodes[base_type] = self.node(node, path)
        return RuleSet(nodes=nodes)


def rules_from_dict(document: Any, allow_unknown_deps: bool = False) -> RuleSet:
    return _RuleParser(allow_unknown_deps).rule_set(document)


def load_rules(content: str, allow_unknown_deps: bool = False) -> RuleSet:
    """
    Loads and validates a dependency pattern file (see docs/rule-schema.md).

    :raises RuleValidationError: with the JSON path of the first violation.
    """
    try:
        document = json.loads(content)
    except json.JSONDecodeError as e:
        raise RuleValidationError(f"invalid JSON: {e}") from None
    rules = rules_from_dict(document, allow_unknown_deps)
    logger.debug(f"Loaded {len(rules)} dependency rule entries.")
    return rules


def load_rules_file(path: Optional[Union[str, Path]] = None, allow_unknown_deps: bool = False) -> RuleSet:
    source = Path(path) if path else DEFAULT_RULES_PATH
    try:
        content = source.read_text(encoding="utf-8")
    except OSError as e:
        raise RuleValidationError(f"cannot read rule file {source}: {e}") from None
    return load_rules(content, allow_unknown_deps)


def _action_to_dict(action: Action) -> Optional[Dict[str, Any]]:
    if isinstance(action, Accept):
        return None
    result: Dict[str, Any] = {
        "allowedDeps": list(action.allowed_deps),
        "chainDeps": list(action.chain_deps),
        "maxDepth": action.max_depth,
    }
    if action.include_self:
        result["includeSelf"] = True
    return result


def _formats_to_dict(formats: FormatMap) -> Dict[str, Any]:
    result = {}
    for fmt in MeasurementFormat:
        matcher = formats.get(fmt)
        if matcher is None:
            continue
        item: Dict[str, Any] = {}
        if matcher.pos_in:
            item["pos_in"] = {k: _action_to_dict(v) for k, v in sorted(matcher.pos_in.items())}
        if matcher.pos_equals:
            item["pos_equals"] = {k: _action_to_dict(v) for k, v in sorted(matcher.pos_equals.items())}
        result[fmt.value] = item
    return result


def rules_to_dict(rules: RuleSet) -> Dict[str, Any]:
    document: Dict[str, Any] = {}
    for base_type in sorted(rules.nodes):
        node = rules.nodes[base_type]
        if node.enhanced:
            document[base_type] = {
                "enhanced": True,
                "connectors": {word: _formats_to_dict(f) for word, f in sorted(node.connectors.items())},
            }
        else:
            document[base_type] = {"enhanced": False, "formats": _formats_to_dict(node.formats)}
    return document


def dump_rules(rules: RuleSet, indent: Optional[int] = 2) -> str:
    """Serializes a rule set back to the rule file format (keys sorted)."""
    return json.dumps(rules_to_dict(rules), indent=indent, ensure_ascii=False)
