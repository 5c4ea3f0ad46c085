"""Figure rendering for the CLI report path.

Each function takes the rows a command just wrote as CSV and saves a PNG
next to it.  Plotting is strictly optional; the CSV remains the data
contract.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_trace_plot(trace, path, title=None):
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 5))
    ax1.plot(trace.times, trace.population, color="tab:blue")
    ax1.set_ylabel(r"$|\varepsilon(t)|^2$")
    ax2.plot(trace.times, trace.sigma, color="tab:red")
    ax2.axhline(0.0, color="gray", lw=0.8, ls=":")
    ax2.set_ylabel(r"$\partial_t|\varepsilon(t)|^2$")
    ax2.set_xlabel(r"$Rt$")
    if title:
        ax1.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_omega_sweep_plot(rows, path, tau_D=None):
    omegas = [r.drive_strength for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    ax1.plot(omegas, [r.tau_qsl_ratio for r in rows], color="tab:blue")
    if tau_D is not None:
        ax1.axhline(1.0, color="green", lw=0.8, ls="-.")
    ax1.set_ylabel(r"$\tau_{QSL}/\tau_D$")
    ax2.plot(omegas, [r.blp_measure for r in rows], color="tab:red", label="non-Markovianity")
    ax2.plot(omegas, [r.population_deficit for r in rows], color="black", label=r"$1-P_{\tau_D}$")
    ax2.set_ylabel("measure / deficit")
    ax2.set_xlabel(r"$\Omega/R$")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_window_sweep_plot(rows, path):
    drives = sorted({r.drive_strength for r in rows})
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for drive in drives:
        sub = [r for r in rows if r.drive_strength == drive]
        taus = [r.tau_window_start for r in sub]
        ax1.plot(taus, [r.tau_qsl_ratio for r in sub], label=rf"$\Omega={drive:g}$")
        ax2.plot(taus, [1.0 - r.population_deficit for r in sub])
    ax2.axhline(0.5, color="green", lw=0.8, ls="-.")
    ax1.set_ylabel(r"$\tau_{QSL}/\tau_D$")
    ax2.set_ylabel(r"$P_\tau$")
    ax2.set_xlabel(r"$R\tau$")
    ax1.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
