/// `println!` that stops quietly when stdout is closed.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

mod args;
mod failure;

use std::fs;
use std::net::SocketAddr;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use pentanetz_client::Client;
use pentanetz_core::group::{tile_group, Family, GeneratorSet};
use pentanetz_core::pitch::PitchSegment;
use pentanetz_core::surface::{
    build_orbit_surface, build_surface, formula_report, incidence_for_length, surface_stats,
    table_row, BuildMode, CombinatorialSurface, OrbitSeeds,
};
use pentanetz_core::walks::{evaluate, CayleyGraph, Walk};
use pentanetz_core::wire::{
    CayleyResponse, GroupReport, NeighborsResponse, NormalizeResponse, SessionView,
};
use pentanetz_server::{AppState, ServerConfig};

use args::{
    Cli, Command, Format, Generators, Global, GroupKind, Mode, Seeds, SessionAction, WalkAction,
};
use failure::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    say!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

fn build_mode(m: Mode) -> BuildMode {
    match m {
        Mode::Orbit => BuildMode::Orbit,
        Mode::Cover => BuildMode::Cover,
    }
}

impl Global {
    fn segment(&self) -> Result<PitchSegment, Failure> {
        Ok(PitchSegment::parse(&self.segment, self.modulus)?)
    }

    fn client(&self) -> Option<Client> {
        self.server.as_deref().map(Client::new)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match cli.command {
        Command::Orbit { generators } => orbit(g, generators),
        Command::Group => group(g),
        Command::Surface { mode, seeds, out } => surface(g, mode, seeds, out.as_deref()),
        Command::Stats { input, mode } => stats(g, input.as_deref(), mode),
        Command::Cayley { group, format } => cayley(g, group, format),
        Command::Walk { action } => walk(g, action),
        Command::Formulas {
            table1,
            n,
            count,
            input,
            mode,
            group_order,
        } => {
            if table1 {
                table(g, n, count)
            } else {
                formulas(g, input.as_deref(), mode, group_order)
            }
        }
        Command::Neighbors => neighbors(g),
        Command::Session { action } => session(g, action),
        Command::Serve {
            port,
            host,
            mode,
            session_log,
        } => serve(g, &host, port, mode, session_log),
    }
}

fn orbit(g: &Global, generators: Generators) -> Result<(), Failure> {
    let s = g.segment()?;
    let set = match generators {
        Generators::Full => GeneratorSet::Family(Family::Full),
        Generators::Cyclic => GeneratorSet::Family(Family::Cyclic),
        Generators::Ti => GeneratorSet::TranspositionInversion,
    };
    let orbit = pentanetz_core::group::orbit(&s, &set)?;
    let names: Vec<String> = orbit.iter().map(ToString::to_string).collect();
    if g.json {
        print_json(&serde_json::json!({
            "segment": s.to_string(),
            "size": names.len(),
            "orbit": names,
        }));
    } else {
        for name in names {
            say!("{name}");
        }
    }
    Ok(())
}

fn group(g: &Global) -> Result<(), Failure> {
    let report = match g.client() {
        Some(c) => c.group()?,
        None => GroupReport::compute(&g.segment()?)?,
    };
    if g.json {
        print_json(&report);
    } else {
        print_group(&report);
    }
    let cert = &report.certificate;
    if !cert.holds {
        return Err(Failure::Condition(format!(
            "{} does not satisfy Condition {} (gcd of differences with {} is {})",
            report.segment, cert.condition, cert.modulus, cert.gcd
        )));
    }
    if let Some(e) = report.tile_group_error {
        return Err(Failure::Construction(e));
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn print_group(r: &GroupReport) {
    let c = &r.certificate;
    say!("segment {} mod {}", r.segment, r.modulus);
    say!(
        "condition {}: {} (differences {}, gcd {})",
        c.condition,
        if c.holds { "holds" } else { "fails" },
        join(&c.differences),
        c.gcd
    );
    if c.holds {
        say!("certificate lambda=({})", join(&c.lambdas));
    }
    say!("basis full: {}", r.basis_full.join(" "));
    say!("basis cyclic: {}", r.basis_cyclic.join(" "));
    say!(
        "restricted translations: order {} generated by T_{}",
        r.restricted.order,
        r.restricted.generator
    );
    say!("orbit size: {}", r.orbit_size);
    say!("T/I orbit size: {}", r.ti_orbit_size);
    if let Some(t) = &r.tile_group {
        say!("tile group order: {}", t.order);
        say!("Ab_T order: {}", t.n_ab);
        say!("dihedral quotient order: {}", t.dihedral_order);
    }
}

fn built_surface(g: &Global, mode: Mode, seeds: Seeds) -> Result<CombinatorialSurface, Failure> {
    let s = g.segment()?;
    Ok(match (mode, seeds) {
        (Mode::Orbit, Seeds::Ti) => {
            build_orbit_surface(&s, OrbitSeeds::TranspositionInversionClass)?
        }
        (mode, _) => build_surface(&s, build_mode(mode))?,
    })
}

fn read_surface(path: &Path) -> Result<CombinatorialSurface, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    CombinatorialSurface::from_json(&text)
        .map_err(|e| Failure::Construction(format!("{}: {e}", path.display())))
}

fn surface(g: &Global, mode: Mode, seeds: Seeds, out: Option<&Path>) -> Result<(), Failure> {
    let surface = built_surface(g, mode, seeds)?;
    let json = surface.to_json();
    match out {
        Some(path) => {
            fs::write(path, &json)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            let stats = surface_stats(&surface);
            if g.json {
                print_json(&stats);
            } else {
                say!("wrote {}: {stats}", path.display());
            }
        }
        None => say!("{json}"),
    }
    Ok(())
}

fn stats(g: &Global, input: Option<&Path>, mode: Mode) -> Result<(), Failure> {
    let stats = match (input, g.client()) {
        (Some(path), _) => surface_stats(&read_surface(path)?),
        (None, Some(c)) => c.surface_stats()?.stats,
        (None, None) => surface_stats(&built_surface(g, mode, Seeds::Single)?),
    };
    if g.json {
        print_json(&stats);
    } else {
        say!("{stats}");
    }
    Ok(())
}

fn cayley(g: &Global, kind: GroupKind, format: Format) -> Result<(), Failure> {
    let name = match kind {
        GroupKind::Tile => "tile",
        GroupKind::Dihedral => "dihedral",
    };
    let graph = match g.client() {
        Some(c) => {
            let resp = c.cayley(name)?;
            CayleyGraph::from_json_value(&resp.graph)
                .map_err(|e| Failure::Runtime(format!("malformed graph from server: {e}")))?
        }
        None => {
            let t = tile_group(&g.segment()?)?;
            match kind {
                GroupKind::Tile => CayleyGraph::of_tile_group(&t),
                GroupKind::Dihedral => CayleyGraph::of_dihedral(&t.dihedral_quotient()),
            }
        }
    };
    match format {
        Format::Dot => say!("{}", graph.to_dot().trim_end()),
        Format::Graphml => say!("{}", graph.to_graphml().trim_end()),
        Format::Json => print_json(&CayleyResponse {
            schema_version: pentanetz_core::wire::SCHEMA_VERSION,
            group: name.into(),
            vertex_count: graph.vertices.len(),
            edge_count: graph.edges.len(),
            graph: graph.to_json_value(),
        }),
    }
    Ok(())
}

fn walk(g: &Global, action: WalkAction) -> Result<(), Failure> {
    match action {
        WalkAction::Normalize { walk } => {
            let resp = match g.client() {
                Some(c) => c.normalize(&walk)?,
                None => NormalizeResponse::compute(&Walk::parse_product(&walk)?),
            };
            if g.json {
                print_json(&resp);
            } else {
                say!("{}", resp.normal_form);
            }
        }
        WalkAction::Eval { walk } => {
            let s = g.segment()?;
            let w = Walk::parse_product(&walk)?;
            let image = evaluate(&w, &s)?;
            if g.json {
                print_json(&serde_json::json!({
                    "segment": s.to_string(),
                    "steps": w.steps(),
                    "image": image.to_string(),
                }));
            } else {
                say!("{image}");
            }
        }
    }
    Ok(())
}

fn table(g: &Global, n: Option<u64>, count: Option<u64>) -> Result<(), Failure> {
    let lengths: Vec<u64> = n.map_or_else(|| (3..=12).collect(), |n| vec![n]);
    let counts: Vec<u64> = count.map_or_else(|| (1..=5).collect(), |c| vec![c]);
    let mut rows = Vec::new();
    for &n in &lengths {
        let genera = counts
            .iter()
            .map(|&c| table_row(n, c))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(serde_json::json!({
            "n": n,
            "q": incidence_for_length(n as usize),
            "N": counts,
            "genus": genera,
        }));
        if !g.json {
            if lengths.len() == 1 && counts.len() == 1 {
                say!("g={}", genera[0]);
            } else {
                say!(
                    "n={n} q={} g={}",
                    incidence_for_length(n as usize),
                    join(&genera)
                );
            }
        }
    }
    if g.json {
        print_json(&rows);
    }
    Ok(())
}

fn formulas(
    g: &Global,
    input: Option<&Path>,
    mode: Mode,
    group_order: Option<usize>,
) -> Result<(), Failure> {
    let surface = match input {
        Some(path) => read_surface(path)?,
        None => built_surface(g, mode, Seeds::Single)?,
    };
    let r = formula_report(&surface, group_order)?;
    if g.json {
        print_json(&serde_json::json!({ "report": r, "consistent": r.consistent() }));
        return Ok(());
    }
    let yes = |b: bool| if b { "ok" } else { "FAILS" };
    say!("type {{{},{}}} genus {}", r.p, r.q, r.genus);
    say!("qV = 2E = pF: {}", yes(r.flag_identity));
    say!(
        "(p-2)(q-2) = 4(1-chi/V)(1-chi/F): {}",
        yes(r.curvature_identity)
    );
    match r.genus_formula {
        Some(gf) => say!("genus from tiling: {gf}"),
        None => say!("genus from tiling: not an integer"),
    }
    match r.triangle_group {
        Some(t) => say!(
            "triangle group order {} (4E = {}), rotation subgroup {}",
            t.full,
            r.flag_count,
            t.von_dyck
        ),
        None => say!("triangle group order: euclidean signature"),
    }
    if let Some(h) = r.hurwitz {
        say!("Hurwitz bound: {}", yes(h));
    }
    say!("consistent: {}", if r.consistent() { "yes" } else { "no" });
    Ok(())
}

fn neighbors(g: &Global) -> Result<(), Failure> {
    let resp = match g.client() {
        Some(c) => c.neighbors(Some(&g.segment), Some(g.modulus))?,
        None => NeighborsResponse::compute(&g.segment()?)?,
    };
    if g.json {
        print_json(&resp);
    } else {
        for n in &resp.neighbors {
            say!("{} {} {}", n.gen, n.operator, n.segment);
        }
    }
    Ok(())
}

fn print_session(g: &Global, v: &SessionView) {
    if g.json {
        print_json(v);
        return;
    }
    say!("session {}", v.id);
    say!("base    {}", v.base);
    say!("current {}", v.current);
    say!("history {}", join(&v.history));
    say!("walk    {}", join(&v.walk));
    say!("normal  {}", v.normal_form);
}

fn session(g: &Global, action: SessionAction) -> Result<(), Failure> {
    let c = g
        .client()
        .ok_or_else(|| Failure::Usage("session commands need --server URL".into()))?;
    let view = match action {
        SessionAction::New => c.create_session(Some(&g.segment))?,
        SessionAction::Show { id } => c.session(&id)?,
        SessionAction::Step { id, gen } => c.step(&id, gen)?,
        SessionAction::Undo { id } => c.undo(&id)?,
    };
    print_session(g, &view);
    Ok(())
}

fn serve(
    g: &Global,
    host: &str,
    port: u16,
    mode: Mode,
    session_log: Option<std::path::PathBuf>,
) -> Result<(), Failure> {
    let addr: SocketAddr = format!("{host}:{port}")
        .parse()
        .map_err(|e| Failure::Usage(format!("bad address {host}:{port}: {e}")))?;
    let config = ServerConfig {
        segment: g.segment()?,
        mode: build_mode(mode),
        session_log,
    };
    let state = AppState::new(config)?;
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Runtime(e.to_string()))?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        say!("listening on http://{}", listener.local_addr()?);
        pentanetz_server::serve_on(state, listener).await
    })
    .map_err(|e| Failure::Runtime(e.to_string()))
}
