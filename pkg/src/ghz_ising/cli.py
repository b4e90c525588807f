"""
Linha de comando: ghz-ising <comando> [opções]

Comandos: spectrum, verify-closed-form, avn, search, simulate.
Códigos de saída: 0 sucesso, 2 validação, 3 limite excedido, 4 falha de
certificação, 5 fundamental degenerado sem --parity, 6 sem forma fechada.
"""

import argparse
import contextlib
import sys
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from ghz_ising import __version__, config
from ghz_ising.avn import (
    brute_force_satisfiable,
    certify_avn,
    check_certificate,
    build_lhv_system,
    excited_ghz_set_4,
    operator_parity,
    standard_ghz_set,
)
from ghz_ising.errors import CapExceededError, GhzIsingError, NoClosedFormError, ValidationError
from ghz_ising.model import (
    IsingParams,
    closed_form_ground_state_3,
    closed_form_ground_state_4,
    closed_form_norm_check_4,
    exact_diagonalize,
    first_excited_state_4,
    ground_space_projection,
    ground_state,
    parity_state,
    resolve_b0_reading_4,
)
from ghz_ising.measure import run_experiment
from ghz_ising.pauli import format_pauli
from ghz_ising.report import FORMATS, Report
from ghz_ising.search import scan_ground_state

DEFAULT_GRID = {3: (0.0, 0.1, 0.25, 0.5, 1.0, 2.0), 4: (0.0, 0.5, 1.0)}
OVERLAP_THRESHOLD = {3: 1e-9, 4: 1e-6}


@dataclass
class RunConfig:
    """Configuração validada de uma execução."""

    command: str
    n: int
    field_b: float = 0.0
    tol_eigen: float = config.TOL_EIGEN
    tol_eigen_numeric: float = config.TOL_EIGEN_NUMERIC
    tol_degeneracy: float = config.TOL_DEGENERACY
    tol_stabilizer: float = config.TOL_STABILIZER
    shots: int = config.DEFAULT_SHOTS
    seed: int = config.DEFAULT_SEED
    parity: str = None
    excited: bool = False
    numeric: bool = False
    levels: int = 4
    max_size: int = 4
    fields: tuple = None
    dense_cap: int = config.HAMILTONIAN_DENSE_CAP
    scan_cap: int = config.SCAN_CAP
    brute_force_cap: int = config.BRUTE_FORCE_CAP
    state_vector_cap: int = config.STATE_VECTOR_CAP
    max_workers: int = config.MAX_WORKERS
    output: str = None
    format: str = "json"

    def validate(self):
        if self.n < 2:
            raise ValidationError(f"--n deve ser >= 2, recebido: {self.n}")
        for name in ("dense_cap", "scan_cap", "brute_force_cap", "state_vector_cap", "max_workers"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{config.ENV_PREFIX}{name.upper()} deve ser >= 1")
        if self.n > self.state_vector_cap:
            raise CapExceededError(
                f"--n limitado a {self.state_vector_cap} (vetor de estado com 2^n amplitudes), recebido: {self.n}"
            )
        if self.field_b < 0:
            raise ValidationError(f"--field deve ser >= 0, recebido: {self.field_b}")
        for name in ("tol_eigen", "tol_eigen_numeric", "tol_degeneracy", "tol_stabilizer"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"--{name.replace('_', '-')} deve ser positiva")
        if self.shots < 1:
            raise ValidationError(f"--shots deve ser >= 1, recebido: {self.shots}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError(f"--seed deve estar em [0, 2^64), recebido: {self.seed}")
        if self.parity not in (None, "even", "odd"):
            raise ValidationError(f"--parity deve ser 'even' ou 'odd', recebido: '{self.parity}'")
        if self.format not in FORMATS:
            raise ValidationError(f"--format deve ser um de {FORMATS}, recebido: '{self.format}'")
        if self.excited and self.n != 4:
            raise ValidationError("--excited só existe para n = 4")
        if self.levels < 1 or self.max_size < 1:
            raise ValidationError("--levels e --max-size devem ser >= 1")
        return self

    def echo(self):
        data = asdict(self)
        data.pop("output")
        return data


# =================
# SELEÇÃO DE ESTADO
# =================

def select_state(cfg):
    """
    Estado usado por `avn` e `simulate`.

    Returns:
        tuple: (StateVector, descrição, tolerância quântica)
    """
    if cfg.excited:
        if cfg.field_b != 0:
            raise ValidationError("O estado excitado só é definido em 𝔅 = 0")
        return first_excited_state_4(), "first_excited_4", cfg.tol_eigen

    params = IsingParams(cfg.n, cfg.field_b)
    parity = cfg.parity or "even"
    if cfg.numeric:
        state = ground_state(params, parity=parity, degeneracy_tol=cfg.tol_degeneracy, dense_cap=cfg.dense_cap)
        return state, f"numeric_ground_{parity}", max(cfg.tol_eigen, cfg.tol_eigen_numeric)
    if cfg.field_b == 0:
        return parity_state(cfg.n, parity, state_cap=cfg.state_vector_cap), f"{parity}_parity_uniform", cfg.tol_eigen
    if parity == "odd":
        raise ValidationError("Para 𝔅 > 0 o fundamental é par; --parity odd não se aplica")
    if cfg.n == 3:
        return closed_form_ground_state_3(cfg.field_b), "closed_form_3", cfg.tol_eigen
    if cfg.n == 4:
        return closed_form_ground_state_4(cfg.field_b), "closed_form_4", cfg.tol_eigen
    raise NoClosedFormError(f"Sem forma fechada para n = {cfg.n} com 𝔅 > 0; use --numeric")


def select_set(cfg, state):
    if cfg.excited:
        return excited_ghz_set_4(state, tol=cfg.tol_eigen)
    return standard_ghz_set(cfg.n, parity=cfg.parity or "even")


# =================
# COMANDOS
# =================

def cmd_spectrum(cfg, verbose=False):
    """Níveis mais baixos e degenerescências."""
    params = IsingParams(cfg.n, cfg.field_b)
    spectrum = exact_diagonalize(
        params, k=min(cfg.levels, 1 << cfg.n), degeneracy_tol=cfg.tol_degeneracy,
        dense_cap=cfg.dense_cap, verbose=verbose,
    )
    frame = spectrum.to_frame(max_levels=cfg.levels)
    return {
        "n": cfg.n,
        "field_b": cfg.field_b,
        "degeneracy_tol": spectrum.degeneracy_tol,
        "ground_energy": spectrum.ground_energy,
        "ground_dimension": spectrum.ground_dimension,
        "level_count": len(spectrum.levels),
        "max_residual": max(max(r) for r in spectrum.residuals),
        "rows": frame.to_dict(orient="records"),
    }


def cmd_verify_closed_form(cfg, verbose=False):
    """Overlap das formas fechadas (N = 3 e N = 4) com o fundamental numérico."""
    if cfg.n not in (3, 4):
        raise NoClosedFormError(f"Formas fechadas existem só para n = 3 e n = 4, recebido n = {cfg.n}")
    builder = closed_form_ground_state_3 if cfg.n == 3 else closed_form_ground_state_4
    threshold = OVERLAP_THRESHOLD[cfg.n]
    fields = cfg.fields or DEFAULT_GRID[cfg.n]

    rows = []
    for field_b in fields:
        params = IsingParams(cfg.n, field_b)
        spectrum = exact_diagonalize(params, k=1, degeneracy_tol=cfg.tol_degeneracy, dense_cap=cfg.dense_cap)
        formula = builder(field_b)
        projection = ground_space_projection(spectrum, formula)
        row = {
            "field_b": field_b,
            "ground_dimension": spectrum.ground_dimension,
            "ground_energy": spectrum.ground_energy,
            "overlap": projection,
            "deficit": 1 - projection,
            "passed": 1 - projection <= threshold,
        }
        if cfg.n == 4:
            row.update(closed_form_norm_check_4(field_b))
        if verbose:
            status = "OK" if row["passed"] else "DISCREPÂNCIA"
            print(f"   𝔅 = {field_b}: overlap = {projection:.15f} [{status}]")
        rows.append(row)

    payload = {
        "n": cfg.n,
        "threshold": threshold,
        "ok": all(r["passed"] for r in rows),
        "discrepancies": [r["field_b"] for r in rows if not r["passed"]],
        "rows": rows,
    }
    if cfg.n == 4:
        payload["b0_reading"] = resolve_b0_reading_4(degeneracy_tol=cfg.tol_degeneracy)
    return payload


def cmd_avn(cfg, verbose=False):
    """Certifica a prova AVN do conjunto padrão (ou excitado) no estado escolhido."""
    state, state_name, tol = select_state(cfg)
    constraint_set = select_set(cfg, state)
    certificate = certify_avn(constraint_set, state, tol)
    system = build_lhv_system(constraint_set)

    payload = certificate.to_dict()
    payload["state"] = state_name
    payload["ok"] = certificate.holds
    if certificate.classical.certificate is not None:
        rows = certificate.classical.certificate
        product, eigen_product = operator_parity(constraint_set, rows)
        payload["certificate_check"] = check_certificate(system, rows)
        payload["operator_product"] = format_pauli(product)
        payload["eigenvalue_product"] = eigen_product
    if system.n_variables <= cfg.brute_force_cap:
        payload["brute_force"] = brute_force_satisfiable(constraint_set, cap=cfg.brute_force_cap).to_dict()
    payload["rows"] = payload["constraints"]
    if verbose:
        status = "CERTIFICADA" if certificate.holds else "NÃO CERTIFICADA"
        print(f"Prova AVN {status} para {state_name} (n = {cfg.n})")
    return payload


def cmd_search(cfg, verbose=False):
    """Inventário de estabilizadores e subconjuntos AVN do fundamental."""
    params = IsingParams(cfg.n, cfg.field_b)
    report = scan_ground_state(
        params, parity=cfg.parity, tol=cfg.tol_stabilizer, max_size=cfg.max_size,
        degeneracy_tol=cfg.tol_degeneracy, max_workers=cfg.max_workers,
        dense_cap=cfg.dense_cap, scan_cap=cfg.scan_cap, verbose=verbose,
    )
    payload = report.to_dict()
    payload["rows"] = payload["inventory"]
    return payload


def cmd_simulate(cfg, verbose=False):
    """Experimento de medições locais semeado."""
    state, state_name, _ = select_state(cfg)
    constraint_set = select_set(cfg, state)
    result = run_experiment(state, constraint_set, shots=cfg.shots, seed=cfg.seed, verbose=verbose)
    payload = result.to_dict()
    payload["state"] = state_name
    payload["set"] = constraint_set.as_text()
    payload["rows"] = payload["constraints"]
    return payload


COMMANDS = {
    "spectrum": cmd_spectrum,
    "verify-closed-form": cmd_verify_closed_form,
    "avn": cmd_avn,
    "search": cmd_search,
    "simulate": cmd_simulate,
}


# =================
# ARGUMENTOS
# =================

def _fields(text):
    try:
        return tuple(float(value) for value in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Lista de campos inválida: '{text}'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ghz-ising",
        description="Ising 1D com campo transverso: espectro exato e provas GHZ (AVN)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemplos:
  ghz-ising spectrum --n 4 --field 0
  ghz-ising verify-closed-form --n 3 --fields 0,0.5,1,2
  ghz-ising avn --n 4 --excited
  ghz-ising search --n 3 --field 0 --parity even
  ghz-ising simulate --n 3 --shots 10000 --seed 7 --format csv
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name, help=COMMANDS[name].__doc__)
        p.add_argument("--n", type=int, required=True, help="Número de sítios")
        p.add_argument("--field", type=float, default=0.0, help="Campo transverso 𝔅 (default: 0)")
        p.add_argument("--tol-eigen", type=float, default=None, help="Tolerância das equações de autovalor")
        p.add_argument("--tol-degeneracy", type=float, default=None, help="Limiar de degenerescência")
        p.add_argument("--tol-stabilizer", type=float, default=None, help="Tolerância da varredura")
        p.add_argument("--shots", type=int, default=None, help="Rodadas por restrição")
        p.add_argument("--seed", type=int, default=None, help="Semente do gerador PCG64")
        p.add_argument("--parity", choices=("even", "odd"), default=None, help="Setor de paridade em 𝔅 = 0")
        p.add_argument("--excited", action="store_true", help="Usa o primeiro excitado de N = 4")
        p.add_argument("--numeric", action="store_true", help="Usa o fundamental numérico")
        p.add_argument("--levels", type=int, default=4, help="Níveis listados em spectrum")
        p.add_argument("--max-size", type=int, default=4, help="Tamanho máximo dos subconjuntos AVN")
        p.add_argument("--fields", type=_fields, default=None, help="Grade de 𝔅 para verify-closed-form")
        p.add_argument("--format", choices=FORMATS, default="json", help="Formato do relatório")
        p.add_argument("--out", default=None, help="Arquivo de saída (default: stdout)")
        p.add_argument("--verbose", action="store_true", help="Progresso em stderr")
    return parser


def config_from_args(args, settings=None):
    """Argumentos da linha de comando sobre as Settings (.env e ambiente)."""
    settings = (settings or config.load_settings()).with_overrides(
        tol_eigen=args.tol_eigen,
        tol_degeneracy=args.tol_degeneracy,
        tol_stabilizer=args.tol_stabilizer,
        shots=args.shots,
        seed=args.seed,
    )
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        field_b=args.field,
        parity=args.parity,
        excited=args.excited,
        numeric=args.numeric,
        levels=args.levels,
        max_size=args.max_size,
        fields=args.fields,
        output=args.out,
        format=args.format,
        **asdict(settings),
    )
    return cfg.validate()


def run(cfg, verbose=False):
    """Executa um comando e devolve o Report."""
    started_at = datetime.now(timezone.utc).isoformat()
    start = time.perf_counter()
    payload = COMMANDS[cfg.command](cfg, verbose=verbose)
    return Report(
        version=__version__,
        command=cfg.command,
        config=cfg.echo(),
        payload=payload,
        started_at=started_at,
        duration_s=time.perf_counter() - start,
    )


def main(argv=None, settings=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args, settings)
        # progresso das funções da biblioteca vai para stderr; stdout fica com o relatório
        with contextlib.redirect_stdout(sys.stderr):
            report = run(cfg, verbose=args.verbose)
    except GhzIsingError as e:
        print(f"Erro: {e}", file=sys.stderr)
        return e.exit_code

    text = report.render(cfg.format)
    if cfg.output:
        Path(cfg.output).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.output).write_text(text, encoding="utf-8")
        if args.verbose:
            print(f"Relatório salvo em: {cfg.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)

    if not report.ok:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
