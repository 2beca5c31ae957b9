from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError, root_validator, validator

from config.settings import settings
from domain.errors import ConfigError

INPUT_FORMATS = ("conllu", "annotation-json", "raw-text")
SUFFIX_FORMATS = {".conllu": "conllu", ".conll": "conllu", ".json": "annotation-json", ".txt": "raw-text"}


def infer_format(path: str) -> str:
    return SUFFIX_FORMATS.get(Path(path).suffix.lower(), "annotation-json")


class RunConfig(BaseModel):
    """
    Validated options of one CLI run. Flags override settings, settings override defaults.
    """
    command: str
    inputs: List[str] = []
    input_format: Optional[str] = None
    endpoint: Optional[str] = settings.ANNOTATION_ENDPOINT
    timeout_ms: int = settings.ANNOTATION_TIMEOUT_MS
    retries: int = settings.ANNOTATION_RETRIES
    rules_path: Optional[str] = None
    allow_unknown_deps: bool = False
    gazetteer_path: Optional[str] = None
    replace_gazetteer: bool = False
    labels_path: Optional[str] = None
    source_tag: Optional[str] = None
    override_spans: bool = False
    end_to_end: bool = False
    from_extractions: Optional[str] = None
    output_path: Optional[str] = None
    report_json: Optional[str] = None
    dump_annotations: Optional[str] = None
    dimension: Optional[str] = None
    unit: Optional[str] = None
    bin_width: Optional[str] = None
    jobs: Optional[int] = settings.MAX_WORKERS
    strict: bool = settings.STRICT

    @validator("input_format")
    def known_format(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in INPUT_FORMATS:
            raise ValueError(f"input format must be one of {', '.join(INPUT_FORMATS)}")
        return value

    @validator("timeout_ms", "retries")
    def positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @validator("jobs")
    def positive_jobs(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("must be >= 1")
        return value

    @root_validator(skip_on_failure=True)
    def consistent(cls, values):
        if values.get("override_spans") and not values.get("labels_path"):
            raise ValueError("--override-spans requires --labels")
        if values.get("command") == "evaluate" and not values.get("labels_path"):
            raise ValueError("evaluate requires --labels")
        formats = [values.get("input_format") or infer_format(p) for p in values.get("inputs", [])]
        if "raw-text" in formats and not values.get("endpoint"):
            raise ValueError("raw-text input requires --endpoint (or ANNOTATION_ENDPOINT)")
        return values

    def format_of(self, path: str) -> str:
        return self.input_format or infer_format(path)

    @property
    def effective_rules_path(self) -> str:
        return self.rules_path or settings.RULES_PATH

    @property
    def effective_gazetteer_path(self) -> Optional[str]:
        if self.gazetteer_path:
            return self.gazetteer_path
        return settings.GAZETTEER_PATH if settings.GAZETTEER_PATH else None


def build_run_config(**options) -> RunConfig:
    """
    :raises ConfigError: with the first violated constraint.
    """
    clean = {key: value for key, value in options.items() if value is not None}
    try:
        return RunConfig(**clean)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"] if part != "__root__")
        prefix = f"{field}: " if field else ""
        raise ConfigError(f"{prefix}{first['msg']}") from None
