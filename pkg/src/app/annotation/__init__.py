from .sentence_builder import build_sentence, make_arc
from .conllu_reader import parse_conllu
from .json_reader import dump_annotation_json, parse_annotation_json, sentence_to_dict
