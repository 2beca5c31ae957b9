from app.evaluation.labels import labeled_to_dict, load_labels
from app.evaluation.metrics import aggregate, compute_metrics, dump_report, format_report, report_to_dict
from app.evaluation.scorer import align_measurements, score_measurements, score_sentence, surface_forms
