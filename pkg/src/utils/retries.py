from typing import Tuple, Type

from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential


def retry_on_exception(
    attempts: int = 3,
    exceptions: Tuple[Type[BaseException], ...] = (Exception,),
    min_wait: float = 1,
    max_wait: float = 10,
):
    """
    Decorator to retry a call on the given exceptions with exponential backoff.
    The last exception is re-raised once `attempts` is exhausted; `min_wait=0` disables waiting.
    """
    return retry(
        reraise=True,
        wait=wait_exponential(multiplier=min_wait, min=min_wait, max=max_wait),
        stop=stop_after_attempt(max(1, attempts)),
        retry=retry_if_exception_type(exceptions)
    )
