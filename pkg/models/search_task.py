import logging
import threading
from collections import OrderedDict
from datetime import datetime
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from models.reports import SearchReport

logger = logging.getLogger(__name__)

MAX_SEARCH_TASKS = 256


class TaskState(str, Enum):
    PENDING = "pending"
    PROCESSING = "processing"
    COMPLETED = "completed"
    FAILED = "failed"

    @property
    def finished(self) -> bool:
        return self in (TaskState.COMPLETED, TaskState.FAILED)


class SearchRequest(BaseModel):
    model: str = Field(..., description="Model id.", json_schema_extra={"example": "formal-sums"})
    shape: str = Field("neq", description="Literal shape: eq, neq, leq or nleq.", json_schema_extra={"example": "neq"})
    budget: Optional[int] = Field(None, ge=0, description="Trial count; defaults to the run configuration.")
    seed: Optional[int] = Field(None, description="Master seed; defaults to the run configuration.")


class SearchTaskResponse(BaseModel):
    task_id: str
    status: TaskState
    message: str


class SearchTaskStatus(BaseModel):
    task_id: str
    status: TaskState
    message: str
    created_at: datetime
    completed_at: Optional[datetime] = None
    report: Optional[SearchReport] = None
    errors: Optional[List[str]] = None


class SearchTaskStore:
    """Insertion-ordered task table holding at most `capacity` entries.

    When full, the oldest finished task is dropped; running tasks are never evicted,
    so the table may exceed its capacity only while every entry is still running.
    """

    def __init__(self, capacity: int = MAX_SEARCH_TASKS):
        if capacity < 1:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._tasks: "OrderedDict[str, SearchTaskStatus]" = OrderedDict()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._tasks)

    def put(self, task: SearchTaskStatus) -> None:
        with self._lock:
            self._tasks[task.task_id] = task
            self._tasks.move_to_end(task.task_id)
            self._evict()

    def get(self, task_id: str) -> Optional[SearchTaskStatus]:
        with self._lock:
            return self._tasks.get(task_id)

    def update(self, task_id: str, **updates) -> None:
        with self._lock:
            task = self._tasks.get(task_id)
            if task is None:
                logger.warning("search task %s was evicted before its update", task_id)
                return
            for key, value in updates.items():
                setattr(task, key, value)

    def _evict(self) -> None:
        while len(self._tasks) > self.capacity:
            victim = next((tid for tid, t in self._tasks.items() if t.status.finished), None)
            if victim is None:
                return
            del self._tasks[victim]
            logger.debug("evicted finished search task %s", victim)


TASKS = SearchTaskStore()


def process_search(
    store: SearchTaskStore, task_id: str, request: SearchRequest, budget: int, seed: int, workers: int = 1
) -> None:
    """Run a violation search and record the report, or the error, on the task."""
    from services.induction_lab import search_violations

    store.update(task_id, status=TaskState.PROCESSING, message=f"Running {budget} trials on {request.model}...")
    try:
        report = search_violations(request.model, request.shape, budget, seed=seed, workers=workers)
    except Exception as exc:
        logger.exception("search task %s failed", task_id)
        store.update(
            task_id,
            status=TaskState.FAILED,
            completed_at=datetime.now(),
            message=f"Search failed: {exc}",
            errors=[str(exc)],
        )
        return
    store.update(
        task_id,
        status=TaskState.COMPLETED,
        completed_at=datetime.now(),
        message=f"{report.trials} trials, {len(report.findings)} findings",
        report=report,
    )
