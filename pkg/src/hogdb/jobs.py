"""Background invariant computation queue.

One job per (graph, invariant) pair; POLY jobs are served before EXP
jobs, FIFO within a class. Workers write COMPUTED or UNKNOWN values
into the store and never let a solver failure escape: any exception is
contained and the job marked TIMED_OUT with a diagnostic. A watchdog
re-queues jobs whose worker disappeared (RUNNING for over twice the
budget).
"""

from __future__ import annotations

import threading
import time
import traceback
from dataclasses import dataclass, field
from enum import Enum

from . import invariants
from .invariants import (BY_ID, CostClass, DEFAULT_BUDGET, REGISTRY, Status,
                         UNKNOWN)
from .store import Store


class JobState(Enum):
    QUEUED = "QUEUED"
    RUNNING = "RUNNING"
    DONE = "DONE"
    TIMED_OUT = "TIMED_OUT"


@dataclass
class Job:
    graph_id: int
    invariant: str
    budget: float
    state: JobState = JobState.QUEUED
    enqueued_at: float = field(default_factory=time.monotonic)
    started_at: float | None = None
    diagnostic: str | None = None

    @property
    def priority(self) -> CostClass:
        return BY_ID[self.invariant].cost


class JobQueue:
    """In-memory queue bound to a store; safe for concurrent workers."""

    def __init__(self, store: Store, default_budget: float = DEFAULT_BUDGET):
        self.store = store
        self.default_budget = default_budget
        self._lock = threading.Lock()
        self._poly: list[Job] = []
        self._exp: list[Job] = []
        self._active: dict[tuple[int, str], Job] = {}  # non-terminal jobs
        self._running: list[Job] = []
        self._history: list[Job] = []
        self._last_budget: dict[tuple[int, str], float] = {}

    # -- enqueueing ------------------------------------------------------------

    def enqueue_all(self, graph_id: int, budget: float | None = None) -> list[Job]:
        """One job per registry invariant not already COMPUTED."""
        rec = self.store.get(graph_id)
        jobs = []
        with self._lock:
            for inv in REGISTRY:
                value = rec.invariant_values.get(inv.id)
                if value is not None and value.status is Status.COMPUTED:
                    continue
                if (graph_id, inv.id) in self._active:
                    continue
                job = self._push(Job(graph_id, inv.id, budget or self.default_budget))
                jobs.append(job)
        return jobs

    def retry(self, graph_id: int, inv_id: str, budget: float) -> Job:
        """Re-queue an UNKNOWN invariant at a strictly larger budget."""
        if inv_id not in BY_ID:
            raise ValueError(f"unknown invariant {inv_id!r}")
        rec = self.store.get(graph_id)
        value = rec.invariant_values.get(inv_id)
        if value is None or value.status is not Status.UNKNOWN:
            raise ValueError(
                f"invariant {inv_id!r} of graph {graph_id} is not UNKNOWN")
        with self._lock:
            last = self._last_budget.get((graph_id, inv_id), 0.0)
            if budget <= last:
                raise ValueError(
                    f"retry budget {budget}s must exceed the previous {last}s")
            if (graph_id, inv_id) in self._active:
                raise ValueError("a job for this invariant is already queued")
            return self._push(Job(graph_id, inv_id, budget))

    def _push(self, job: Job) -> Job:
        (self._poly if job.priority is CostClass.POLY else self._exp).append(job)
        self._active[(job.graph_id, job.invariant)] = job
        return job

    # -- execution ---------------------------------------------------------------

    def worker_step(self) -> Job | None:
        """Pop and run one job; returns it, or None when the queue is idle."""
        with self._lock:
            job = None
            if self._poly:
                job = self._poly.pop(0)
            elif self._exp:
                job = self._exp.pop(0)
            if job is None:
                return None
            job.state = JobState.RUNNING
            job.started_at = time.monotonic()
            self._running.append(job)
        try:
            rec = self.store.get(job.graph_id)
            value = invariants.compute(rec.graph, job.invariant, job.budget)
            self.store.set_invariant_value(job.graph_id, job.invariant, value)
            done = value.status is Status.COMPUTED
            diagnostic = None
        except Exception:
            self.store.set_invariant_value(job.graph_id, job.invariant, UNKNOWN)
            done = False
            diagnostic = traceback.format_exc(limit=3)
        with self._lock:
            job.state = JobState.DONE if done else JobState.TIMED_OUT
            job.diagnostic = diagnostic
            self._running.remove(job)
            self._active.pop((job.graph_id, job.invariant), None)
            self._last_budget[(job.graph_id, job.invariant)] = job.budget
            self._history.append(job)
        return job

    def drain(self, workers: int = 1) -> int:
        """Run until the queue is empty; returns the number of jobs executed."""
        if workers <= 1:
            count = 0
            while self.worker_step() is not None:
                count += 1
            return count
        counts = [0] * workers

        def loop(slot: int):
            while self.worker_step() is not None:
                counts[slot] += 1

        threads = [threading.Thread(target=loop, args=(i,)) for i in range(workers)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        return sum(counts)

    def requeue_stale(self) -> list[Job]:
        """Watchdog: abandon RUNNING jobs older than twice their budget and
        queue fresh replacements."""
        now = time.monotonic()
        replacements = []
        with self._lock:
            for job in list(self._running):
                if job.started_at is not None and now - job.started_at > 2 * job.budget:
                    self._running.remove(job)
                    job.state = JobState.TIMED_OUT
                    job.diagnostic = "worker lost; re-queued by watchdog"
                    self._history.append(job)
                    self._active.pop((job.graph_id, job.invariant), None)
                    replacements.append(
                        self._push(Job(job.graph_id, job.invariant, job.budget)))
        return replacements

    def enqueue_pending(self) -> int:
        """Startup recovery: queue jobs for every PENDING/UNKNOWN value."""
        count = 0
        for rec in self.store.records():
            for inv_id, value in rec.invariant_values.items():
                if value.status is Status.COMPUTED:
                    continue
                with self._lock:
                    if (rec.id, inv_id) in self._active:
                        continue
                    self._push(Job(rec.id, inv_id, self.default_budget))
                    count += 1
        return count

    # -- inspection ---------------------------------------------------------------

    def counts(self) -> dict[str, int]:
        with self._lock:
            out = {state.value: 0 for state in JobState}
            for job in self._poly + self._exp:
                out[job.state.value] += 1
            for job in self._running:
                out[job.state.value] += 1
            for job in self._history:
                out[job.state.value] += 1
            return out

    def pending_count(self) -> int:
        with self._lock:
            return len(self._poly) + len(self._exp) + len(self._running)


def attach(store: Store, default_budget: float = DEFAULT_BUDGET) -> JobQueue:
    """Wire a queue to a store so inserts enqueue invariant jobs."""
    queue = JobQueue(store, default_budget)
    store.on_insert = lambda rec: queue.enqueue_all(rec.id)
    return queue
