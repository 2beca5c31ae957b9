# src/api/annotation_service/client.py

from typing import Any, Dict, List, Optional

import requests
from requests.adapters import HTTPAdapter, Retry

from app.annotation.json_reader import sentences_from_document
from config.default import DEFAULT_ANNOTATION_RETRIES, DEFAULT_ANNOTATION_TIMEOUT_MS
from domain.errors import AnnotationSchemaError, ServiceConnectionError, ServiceStatusError
from domain.models import Sentence
from utils.logger import setup_logger
from utils.retries import retry_on_exception

logger = setup_logger(__name__)

RETRY_STATUSES = [500, 502, 503, 504]


class AnnotationServiceClient:
    def __init__(
        self,
        endpoint: str,
        timeout_ms: int = DEFAULT_ANNOTATION_TIMEOUT_MS,
        retries: int = DEFAULT_ANNOTATION_RETRIES,
        backoff: float = 0.3,
    ):
        """
        HTTP client for an external tokenizer/tagger/parser service.

        :param endpoint: URL receiving POST {"text": ...} and answering annotation JSON.
        :param timeout_ms: Per-request timeout.
        :param retries: Attempts for connection failures and 5xx answers.
        :param backoff: Base backoff in seconds between attempts (0 disables waiting).
        """
        self.endpoint = endpoint
        self.timeout = timeout_ms / 1000
        self.retries = max(1, retries)
        self.backoff = backoff
        self.session = requests.Session()
        self.session.headers.update({"Content-Type": "application/json"})
        status_retries = Retry(
            total=self.retries - 1,
            backoff_factor=backoff,
            status_forcelist=RETRY_STATUSES,
            allowed_methods=frozenset({"POST"}),
            raise_on_status=False,
        )
        adapter = HTTPAdapter(max_retries=status_retries)
        self.session.mount("https://", adapter)
        self.session.mount("http://", adapter)

    def _post(self, payload: Dict[str, Any]) -> requests.Response:
        return self.session.post(self.endpoint, json=payload, timeout=self.timeout)

    def post_text(self, text: str) -> Dict[str, Any]:
        """
        Sends `text` and returns the decoded annotation document.

        :raises ServiceConnectionError: when the service cannot be reached within the retry budget.
        :raises ServiceStatusError: on a non-2xx answer.
        :raises AnnotationSchemaError: when the body is not JSON.
        """
        send = retry_on_exception(
            attempts=self.retries,
            exceptions=(requests.exceptions.ConnectionError, requests.exceptions.Timeout),
            min_wait=self.backoff,
        )(self._post)
        try:
            response = send({"text": text})
        except (requests.exceptions.ConnectionError, requests.exceptions.Timeout) as e:
            logger.error(f"Annotation service unreachable at {self.endpoint}: {e}")
            raise ServiceConnectionError(f"cannot reach annotation service at {self.endpoint}: {e}") from None
        except requests.exceptions.RequestException as e:
            raise ServiceConnectionError(f"request to {self.endpoint} failed: {e}") from None

        if not 200 <= response.status_code < 300:
            logger.error(f"Annotation service answered HTTP {response.status_code}.")
            raise ServiceStatusError(response.status_code, response.text)
        try:
            return response.json()
        except ValueError:
            raise AnnotationSchemaError("annotation service answered with a non-JSON body") from None

    def annotate(self, text: str) -> List[Sentence]:
        sentences = sentences_from_document(self.post_text(text))
        logger.info(f"Annotation service returned {len(sentences)} sentences.")
        return sentences


def fetch_annotations(text: str, endpoint: str, timeout_ms: Optional[int] = None,
                      retries: Optional[int] = None) -> List[Sentence]:
    """Annotates raw text through the service at `endpoint`."""
    client = AnnotationServiceClient(
        endpoint,
        timeout_ms=timeout_ms if timeout_ms is not None else DEFAULT_ANNOTATION_TIMEOUT_MS,
        retries=retries if retries is not None else DEFAULT_ANNOTATION_RETRIES,
    )
    return client.annotate(text)
