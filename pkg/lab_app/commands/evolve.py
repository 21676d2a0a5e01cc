"""Command evolving configured initial data into a trajectory directory."""
import numpy as np

from lab_app.common.base import _LabService
from lab_app.common.lab_type import LabCommand, LabOutput

from timpy.tools.spectral.constants import CSV_FLOAT_FORMAT, EVOLVE_MODE
from timpy.tools.spectral.energy import energy_ledger
from timpy.tools.spectral.errors import TimoshenkoError
from timpy.tools.spectral.evolution import (
    duhamel_trajectory, evolve_linear_trajectory, integrate_rk4, max_stable_dt)
from timpy.tools.spectral.experiment import ExperimentConfig, initial_data
from timpy.tools.util.utils import errinfo_from_exception


# .............................................................................
def run_evolution(config, mode=None, logger=None):
    """Evolve the initial data of a configuration along one path.

    Args:
        config (timpy.tools.spectral.experiment.ExperimentConfig): configuration.
        mode (str): EVOLVE_MODE value, the configured mode when None.
        logger (timpy.tools.util.logtools.Logger): optional logger.

    Returns:
        timpy.tools.spectral.evolution.Trajectory starting at t = 0.
    """
    mode = mode or config.mode
    U0 = initial_data(config.data, config.grid)
    times = np.union1d([0.0], config.times)
    if mode == EVOLVE_MODE.LINEAR:
        return evolve_linear_trajectory(
            U0, times, config.params, exact_damping=True, config=config.to_dict())
    dt = config.dt or max_stable_dt(config.grid, config.params)
    if mode == EVOLVE_MODE.NONLINEAR:
        return integrate_rk4(
            U0, times[-1], dt, times, config.params, logger=logger,
            config=config.to_dict())
    return duhamel_trajectory(
        U0, times, dt, config.params, logger=logger, config=config.to_dict())


# .............................................................................
class EvolveSvc(_LabService):
    """Linear, nonlinear or Duhamel evolution of configured initial data."""
    COMMAND = LabCommand.Evolve

    # ...............................................
    @classmethod
    def evolve(cls, logger=None, **kwargs):
        """Evolve and write the trajectory, and optionally the energy ledger.

        Args:
            logger (timpy.tools.util.logtools.Logger): optional logger.
            **kwargs: mode, config, out and energies.

        Returns:
            lab_app.common.lab_type.LabOutput
        """
        output = {}
        try:
            params, errinfo = cls._standardize_params(**kwargs)
            config = ExperimentConfig.init_from_file(params["config"])
            mode = params["mode"] or config.mode
            cls._logme(logger, f"Evolving {config.label} in {mode} mode on {config.grid}")
            traj = run_evolution(config, mode=mode, logger=logger)
            traj.write(params["out"])
            cls._logme(logger, f"Wrote {len(traj)} snapshots to {params['out']}")
            output = {
                "label": config.label,
                "mode": mode,
                "snapshots": len(traj),
                "T": float(traj.times[-1]),
                "out": params["out"],
            }
            if params["energies"] is not None:
                ledger = energy_ledger(traj)
                ledger.to_csv(
                    params["energies"], index=False, float_format=CSV_FLOAT_FORMAT)
                output["energy_residual"] = float(ledger["residual"].max())
        except (TimoshenkoError, OSError, ValueError, KeyError) as e:
            errinfo = errinfo_from_exception(e)
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=output,
            errors=errinfo)
