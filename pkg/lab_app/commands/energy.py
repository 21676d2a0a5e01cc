"""Command reporting energies of a stored trajectory."""
from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.constants import CSV_FLOAT_FORMAT
from timpy.tools.spectral.energy import energy_ledger, functionals_ED, sqrt_energy_bound
from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.evolution import Trajectory
from timpy.tools.spectral.experiment import data_norms
from timpy.tools.util.utils import add_errinfo, errinfo_from_exception


# .............................................................................
class EnergySvc(_LabService):
    """Energy ledger, square-root bound and E(T), D(T) of a trajectory."""
    COMMAND = LabCommand.Energy

    # ...............................................
    @classmethod
    def report(cls, logger=None, **kwargs):
        """Compute the energy quantities of a trajectory directory.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: input and out.

        Returns:
            lab_app.common.lab_type.LabOutput: output holds the largest ledger
                residual, the square-root bound ratios, E(T), D(T) and the ratio
                (E(T) + D(T)) / ‖U0‖ in B^{3/2}_{2,1}.
        """
        output = {}
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            traj = Trajectory.read(params["input"])
            ledger = energy_ledger(traj)
            if params["out"] is not None:
                ledger.to_csv(params["out"], index=False, float_format=CSV_FLOAT_FORMAT)
            output = {
                "snapshots": len(traj),
                "T": float(traj.times[-1]),
                "energy_residual": float(ledger["residual"].max()),
            }
            output.update(sqrt_energy_bound(traj))
            if len(traj) > 1:
                energy, dissipation = functionals_ED(traj)
                b32 = data_norms(traj.snapshot(0))["B32"]
                output.update({"E_T": energy, "D_T": dissipation})
                if b32 > 0:
                    output["C0"] = (energy + dissipation) / b32
            else:
                errinfo = add_errinfo(
                    errinfo, "warning", "E(T) and D(T) need at least 2 snapshots")
            cls._logme(logger, f"Energies of {params['input']}: {output}")
        except (TimoshenkoError, OSError, ValueError, KeyError) as e:
            errinfo = errinfo_from_exception(e)
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo)
