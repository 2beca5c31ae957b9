import io
from typing import Iterable, List, Optional, TextIO, Tuple, Union

from app.annotation.sentence_builder import build_sentence, make_arc
from domain.errors import AnnotationParseError
from domain.models import DependencyArc, Sentence, Token
from utils.logger import setup_logger

logger = setup_logger(__name__)

COLUMN_COUNT = 10


class _Block:
    """Accumulates the lines of one CoNLL-U sentence block."""

    def __init__(self, first_line: int):
        self.first_line = first_line
        self.sent_id: Optional[str] = None
        self.text: Optional[str] = None
        self.rows: List[Tuple[int, List[str]]] = []


def _iter_blocks(lines: Iterable[str]) -> Iterable[_Block]:
    block: Optional[_Block] = None
    for line_number, raw_line in enumerate(lines, start=1):
        line = raw_line.rstrip("\r\n")
        if not line.strip():
            if block is not None and block.rows:
                yield block
            block = None
            continue
        if block is None:
            block = _Block(line_number)
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep and key.strip() == "sent_id":
                block.sent_id = value.strip()
            elif sep and key.strip() == "text":
                block.text = value.strip()
            continue
        fields = line.split("\t")
        if len(fields) != COLUMN_COUNT:
            raise AnnotationParseError(
                f"expected {COLUMN_COUNT} tab-separated columns, found {len(fields)}: {line!r}",
                line_number,
            )
        block.rows.append((line_number, fields))
    if block is not None and block.rows:
        yield block


def _parse_int(value: str, column: str, line_number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise AnnotationParseError(f"{column} column is not an integer: {value!r}", line_number) from None


def _block_to_sentence(block: _Block, fallback_id: int) -> Sentence:
    tokens: List[Token] = []
    arcs: List[DependencyArc] = []
    pieces: List[str] = []
    offset = 0

    for line_number, fields in block.rows:
        token_id, form, lemma, upos, xpos, _feats, head, deprel, deps, misc = fields
        if "-" in token_id:
            logger.warning(f"line {line_number}: skipping multiword token range {token_id}")
            continue
        if "." in token_id:
            logger.warning(f"line {line_number}: skipping empty node {token_id}")
            continue
        index = _parse_int(token_id, "ID", line_number)
        pos = xpos if xpos != "_" else upos
        tokens.append(Token(
            index=index,
            text=form,
            pos=pos,
            offset_start=offset,
            offset_end=offset + len(form),
            lemma=None if lemma == "_" else lemma,
        ))
        pieces.append(form)
        offset += len(form)
        if "SpaceAfter=No" not in misc.split("|"):
            pieces.append(" ")
            offset += 1

        if head != "_":
            arcs.append(make_arc(_parse_int(head, "HEAD", line_number), index, deprel))
        if deps != "_":
            for entry in deps.split("|"):
                dep_head, sep, label = entry.partition(":")
                if not sep or not label:
                    raise AnnotationParseError(f"malformed DEPS entry {entry!r}", line_number)
                if "." in dep_head:
                    logger.debug(f"line {line_number}: ignoring enhanced arc to empty node {entry}")
                    continue
                arcs.append(make_arc(_parse_int(dep_head, "DEPS head", line_number), index, label))

    text = "".join(pieces).rstrip(" ")
    if block.text is not None and block.text != text:
        logger.warning(
            f"line {block.first_line}: '# text' differs from the text rebuilt from FORM/SpaceAfter; "
            f"offsets follow the rebuilt text"
        )

    sentence_id = fallback_id
    if block.sent_id is not None:
        try:
            sentence_id = int(block.sent_id)
        except ValueError:
            logger.debug(f"line {block.first_line}: non-numeric sent_id {block.sent_id!r}, using {fallback_id}")

    return build_sentence(sentence_id, text, tokens, arcs)


def parse_conllu(source: Union[TextIO, str]) -> List[Sentence]:
    """
    Parses CoNLL-U into sentences. Tokens take XPOS as their POS (UPOS when XPOS is "_"),
    character offsets are rebuilt from FORM and the SpaceAfter=No convention, and arcs
    join the basic HEAD/DEPREL with every DEPS entry.

    :param source: an open text stream or the CoNLL-U content itself.
    :raises AnnotationParseError: on a malformed line (message names the line number).
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    sentences = []
    for position, block in enumerate(_iter_blocks(stream), start=1):
        sentences.append(_block_to_sentence(block, position))
    logger.debug(f"Parsed {len(sentences)} CoNLL-U sentences.")
    return sentences
