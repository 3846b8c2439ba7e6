use pbbs::crystal::{evolve, t_infinity};
use pbbs::elimination::{t_infinity_arcs, transpose};
use pbbs::kkr::{rc_to_spectrum, shape_via_ascents};
use pbbs::scattering::normalize;
use pbbs::tau::path_from_rc;
use pbbs::{direct_scattering, eliminate_all, fast_forward, forward, inverse_scattering, Capacity, Path};

use crate::{CliError, CliResult};

/// Steps compared between the naive and scattering evolutions.
const EVOLVE_STEPS: u64 = 3;

type Check = Result<(), String>;
type NamedCheck = (&'static str, fn(&Path) -> Check);

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn main_theorem(p: &Path) -> Check {
    let (_, cut) = p.canonical_cut().map_err(err)?;
    let spectrum = eliminate_all(&cut).map_err(err)?.soliton_spectrum();
    let from_rc = rc_to_spectrum(&forward(&cut).map_err(err)?);
    if spectrum != from_rc {
        return Err(format!("elimination {spectrum:?}, rigged configuration {from_rc:?}"));
    }
    Ok(())
}

fn shape_triple(p: &Path) -> Check {
    let from_e = transpose(&eliminate_all(p).map_err(err)?.e_vector);
    let from_rc = forward(p).map_err(err)?.nu();
    let from_ascents = shape_via_ascents(&p.to_tabloid());
    if from_e != from_rc || from_rc != from_ascents {
        return Err(format!("{from_e:?} / {from_rc:?} / {from_ascents:?}"));
    }
    Ok(())
}

fn t_infinity_pair(p: &Path) -> Check {
    let arcs = t_infinity_arcs(p).map_err(err)?;
    let crystal = t_infinity(p).map_err(err)?;
    if arcs != crystal {
        return Err(format!("arcs {arcs}, carrier {crystal}"));
    }
    Ok(())
}

fn roundtrip(p: &Path) -> Check {
    let sd = direct_scattering(p).map_err(err)?;
    let back = inverse_scattering(&sd).map_err(err)?;
    if &back != p {
        return Err(format!("inverse of direct gives {back}"));
    }
    let norm = normalize(&sd).map_err(err)?;
    let again = forward(&path_from_rc(&norm.rc).map_err(err)?).map_err(err)?;
    if again != norm.rc {
        return Err(format!("normalized configuration does not reconstruct: {again:?}"));
    }
    Ok(())
}

fn naive_vs_scattering(p: &Path) -> Check {
    for cap in [Capacity::Finite(1), Capacity::Finite(2), Capacity::Finite(3), Capacity::Infinite] {
        let mut naive = p.clone();
        for n in 1..=EVOLVE_STEPS {
            naive = evolve(cap, &naive).map_err(err)?;
            let fast = fast_forward(p, cap, n).map_err(err)?;
            if fast != naive {
                return Err(format!("T_{cap}^{n}: naive {naive}, scattering {fast}"));
            }
        }
    }
    Ok(())
}

pub fn run(p: &Path) -> CliResult {
    let checks: [NamedCheck; 5] = [
        ("main theorem", main_theorem),
        ("shape triple", shape_triple),
        ("T_inf pair", t_infinity_pair),
        ("scattering roundtrip", roundtrip),
        ("naive vs scattering", naive_vs_scattering),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        match check(p) {
            Ok(()) => println!("{name}: ok"),
            Err(why) => {
                println!("{name}: FAIL {why}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join(", ")))
    }
}
