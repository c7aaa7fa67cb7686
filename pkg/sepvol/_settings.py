import logging
from typing import Literal, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

sepvol_logger = logging.getLogger("sepvol")


class SepvolConfig:
    """
    Config manager for sepvol.

    Examples
    --------
    To set the default seed used when an estimator receives ``seed=None``

    >>> sepvol.settings.seed = 1

    To set the default number of Monte Carlo probes

    >>> sepvol.settings.mc_samples = 20000

    To set the progress bar style, choose one of "rich", "tqdm"

    >>> sepvol.settings.progress_bar_style = "rich"

    To set the verbosity

    >>> import logging
    >>> sepvol.settings.verbosity = logging.INFO

    To set the number of threads used by Monte Carlo estimators

    >>> sepvol.settings.n_workers = 4
    """

    def __init__(
        self,
        verbosity: int = logging.WARNING,
        progress_bar_style: Literal["rich", "tqdm"] = "tqdm",
        seed: int = 0,
        n_workers: int = 1,
        mc_samples: int = 10_000,
        n_starts: int = 16,
        n_sweeps: int = 50,
        sweep_tol: float = 1e-10,
    ):
        self.seed = seed
        self.progress_bar_style = progress_bar_style
        self.n_workers = n_workers
        self.mc_samples = mc_samples
        self.n_starts = n_starts
        self.n_sweeps = n_sweeps
        self.sweep_tol = sweep_tol
        self.verbosity = verbosity

    @property
    def seed(self) -> int:
        """Default 64-bit seed for :class:`~sepvol.sampling.SeededStream`."""
        return self._seed

    @seed.setter
    def seed(self, seed: int):
        if not 0 <= int(seed) < 2**64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {seed}.")
        self._seed = int(seed)

    @property
    def progress_bar_style(self) -> str:
        """Library to use for progress bar."""
        return self._pbar_style

    @progress_bar_style.setter
    def progress_bar_style(self, pbar_style: Literal["tqdm", "rich"]):
        if pbar_style not in ["rich", "tqdm"]:
            raise ValueError("Progress bar style must be in ['rich', 'tqdm']")
        self._pbar_style = pbar_style

    @property
    def n_workers(self) -> int:
        """Number of threads Monte Carlo estimators spread chunks over (default 1)."""
        return self._n_workers

    @n_workers.setter
    def n_workers(self, n_workers: int):
        if n_workers < 1:
            raise ValueError(f"n_workers must be at least 1, got {n_workers}.")
        self._n_workers = int(n_workers)

    @property
    def mc_samples(self) -> int:
        """Default number of Monte Carlo probes (default 10⁴)."""
        return self._mc_samples

    @mc_samples.setter
    def mc_samples(self, mc_samples: int):
        if mc_samples < 2:
            raise ValueError(f"mc_samples must be at least 2, got {mc_samples}.")
        self._mc_samples = int(mc_samples)

    @property
    def n_starts(self) -> int:
        """Random restarts of alternating maximization."""
        return self._n_starts

    @n_starts.setter
    def n_starts(self, n_starts: int):
        if n_starts < 1:
            raise ValueError(f"n_starts must be at least 1, got {n_starts}.")
        self._n_starts = int(n_starts)

    @property
    def n_sweeps(self) -> int:
        """Maximum sweeps per restart of alternating maximization."""
        return self._n_sweeps

    @n_sweeps.setter
    def n_sweeps(self, n_sweeps: int):
        if n_sweeps < 1:
            raise ValueError(f"n_sweeps must be at least 1, got {n_sweeps}.")
        self._n_sweeps = int(n_sweeps)

    @property
    def sweep_tol(self) -> float:
        """Early stop when a sweep improves the objective by less than this."""
        return self._sweep_tol

    @sweep_tol.setter
    def sweep_tol(self, sweep_tol: float):
        if sweep_tol < 0:
            raise ValueError(f"sweep_tol must be non-negative, got {sweep_tol}.")
        self._sweep_tol = float(sweep_tol)

    @property
    def verbosity(self) -> int:
        """Verbosity level (default `logging.WARNING`)."""
        return self._verbosity

    @verbosity.setter
    def verbosity(self, level: Union[str, int]):
        """
        Sets logging configuration for sepvol based on chosen level of verbosity.

        If "sepvol" logger has no handler, add one writing to stderr.
        Else, set its level to `level`.

        Parameters
        ----------
        level
            Sets "sepvol" logging level to `level`
        """
        self._verbosity = level
        sepvol_logger.setLevel(level)
        if len(sepvol_logger.handlers) == 0:
            console = Console(stderr=True)
            if console.is_jupyter is True:
                console.is_jupyter = False
            ch = RichHandler(
                level=level, show_path=False, console=console, show_time=False
            )
            formatter = logging.Formatter("%(message)s")
            ch.setFormatter(formatter)
            sepvol_logger.addHandler(ch)

    def reset_logging_handler(self, console: Optional[Console] = None):
        """
        Resets "sepvol" log handler to a basic RichHandler().

        This is useful if piping outputs to a file.
        """
        for handler in list(sepvol_logger.handlers):
            sepvol_logger.removeHandler(handler)
        ch = RichHandler(
            level=self._verbosity,
            show_path=False,
            show_time=False,
            console=console if console is not None else Console(stderr=True),
        )
        formatter = logging.Formatter("%(message)s")
        ch.setFormatter(formatter)
        sepvol_logger.addHandler(ch)


settings = SepvolConfig()
