from .unit_gazetteer import UnitGazetteer, load_gazetteer, parse_gazetteer
from .measurement_detector import classify_format, detect_measurements, normalize, parse_number
from .override_spans import apply_override_spans
from .span_providers import DetectorSpanProvider, LabelSpanProvider
