"""Per-worker computation/storage and total communication overheads.

Scalar multiplications are counted the way the cost analysis enumerates
them (block product, t^2 scalings of H, per-point power scalings, mask
scalings); additions are free.  Storage is cumulative, nothing is deleted.
"""

from dataclasses import dataclass

from .errors import AuditIncomplete, IndivisibleDimension


@dataclass(frozen=True)
class CostReport:
    computation: int
    storage: int
    communication: int
    measured_computation: int | None = None
    measured_storage: int | None = None
    measured_communication: int | None = None

    @property
    def consistent(self):
        measured = (
            self.measured_computation,
            self.measured_storage,
            self.measured_communication,
        )
        if any(v is None for v in measured):
            return None
        return measured == (self.computation, self.storage, self.communication)


def predicted_costs(m, s, t, z, n_workers):
    """Closed-form per-worker computation/storage and total communication."""
    if m % s != 0 or m % t != 0:
        raise IndivisibleDimension(f"s={s} and t={t} must both divide m={m}")
    mm = m * m
    xi = m**3 // (s * t * t) + mm + n_workers * (t * t + z - 1) * mm // (t * t)
    sigma = (2 * n_workers + z + 1) * mm // (t * t) + 2 * mm // (s * t) + t * t
    zeta = n_workers * (n_workers - 1) * mm // (t * t)
    return CostReport(computation=xi, storage=sigma, communication=zeta)


def audit(transcript, predicted=None):
    """Measured counters from a finished transcript, optionally paired with
    predictions.  Requires identical per-worker counters (the protocol is
    symmetric); an unfinished transcript raises AuditIncomplete.
    """
    if not transcript.i_values or not transcript.mults:
        raise AuditIncomplete("transcript is missing phase-2/3 records")
    if len(set(transcript.mults)) != 1 or len(set(transcript.stored)) != 1:
        raise AuditIncomplete("per-worker counters diverge; transcript corrupt")
    xi = transcript.mults[0]
    sigma = transcript.stored[0]
    zeta = transcript.exchanged
    if predicted is None:
        return CostReport(
            computation=xi,
            storage=sigma,
            communication=zeta,
            measured_computation=xi,
            measured_storage=sigma,
            measured_communication=zeta,
        )
    return CostReport(
        computation=predicted.computation,
        storage=predicted.storage,
        communication=predicted.communication,
        measured_computation=xi,
        measured_storage=sigma,
        measured_communication=zeta,
    )


CSV_COLUMNS = (
    "scheme,s,t,z,m,N,xi,sigma,zeta,measured_xi,measured_sigma,measured_zeta"
)


def csv_row(scheme, s, t, z, m, n_workers, report):
    return ",".join(
        str(v)
        for v in (
            scheme,
            s,
            t,
            z,
            m,
            n_workers,
            report.computation,
            report.storage,
            report.communication,
            report.measured_computation,
            report.measured_storage,
            report.measured_communication,
        )
    )
