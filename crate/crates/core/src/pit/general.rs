//! Any bounded top fanin: SG check, then expansion after a linear map into
//! `trdeg`-many variables that keeps the factors' transcendence degree.
//!
//! A zero circuit is SG (`F_i = -Σ_{t≠i} F_t` and each `F_t` holds its
//! chosen factor), so a failed instance proves `C ≠ 0`. A substitution
//! keeping the trdeg of the factor set keeps zero-ness of any polynomial
//! in those factors, so the reduced expansion decides `C`.

use crate::circuit::{normalize, Circuit};
use crate::sg::sg_check;
use crate::trdeg::{faithful_reduce, trdeg};
use crate::verdict::{Certificate, Verdict};

use super::{expand_verdict, finish, require_valid, PipelineConfig, PipelineError};

pub fn pit_general(c: &Circuit, cfg: &PipelineConfig) -> Result<Verdict, PipelineError> {
    require_valid(c)?;
    let norm = normalize(c);
    if let Some(v) = norm.early_verdict {
        return finish("pit", c, v, cfg);
    }
    let n = norm.circuit;
    let sg = sg_check(&n, cfg.mode())?;
    if let Some(w) = sg.witness {
        let v = Verdict::nonzero(Certificate::SgWitness { term: w.term, tuple: w.tuple, gens: w.gens })
            .with_fact("sg_instances", sg.instances);
        return finish("pit", c, v, cfg);
    }
    let factors = n.distinct_factors();
    let tau = trdeg(&factors).value;
    let map = faithful_reduce(&factors, tau, cfg.grid_bound)?;
    let reduced = n.substitute(&map.matrix).expect("shape");
    let mut v = expand_verdict(&reduced, cfg.budget);
    v.reduction = Some(map.matrix);
    let v = v.with_fact("sg_instances", sg.instances).with_fact("trdeg", tau).with_fact("grid", map.grid);
    finish("pit", c, v, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::generate::{gen_zero_circuit, ZeroParams};
    use crate::circuit::parse_circuit;
    use crate::verdict::Status;

    fn strict() -> PipelineConfig {
        PipelineConfig { strict_oracle: true, ..Default::default() }
    }

    #[test]
    fn sum_of_squares_has_sg_witness() {
        let c = parse_circuit("circuit vars=3\nterm\nlin: 1, 0, 0\nlin: 1, 0, 0\nterm\nlin: 0, 1, 0\nlin: 0, 1, 0\nterm\nlin: 0, 0, 1\nlin: 0, 0, 1\n").unwrap();
        let v = pit_general(&c, &strict()).unwrap();
        assert_eq!(v.status, Status::Nonzero);
        assert!(matches!(v.certificate, Certificate::SgWitness { term: 2, .. }));
    }

    #[test]
    fn difference_of_squares_reduces_to_two_variables() {
        let c = parse_circuit("circuit vars=2\nterm\nlin: 1, 1\nlin: 1, -1\nterm scale=-1\nlin: 1, 0\nlin: 1, 0\nterm\nlin: 0, 1\nlin: 0, 1\n").unwrap();
        let v = pit_general(&c, &strict()).unwrap();
        assert_eq!(v.status, Status::Zero);
        assert_eq!(v.fact("trdeg"), Some("2"));
    }

    #[test]
    fn embedded_templates_are_zero() {
        for seed in 0..12 {
            let z = gen_zero_circuit(seed, &ZeroParams { nvars: 6, ..Default::default() });
            let v = pit_general(&z.circuit, &strict()).unwrap();
            assert_eq!(v.status, Status::Zero, "{}", z.template.name());
        }
    }

    #[test]
    fn subset_mode_agrees() {
        let cfg = PipelineConfig { f_max: Some(1), ..strict() };
        for seed in 0..6 {
            let z = gen_zero_circuit(seed, &ZeroParams { nvars: 5, ..Default::default() });
            assert_eq!(pit_general(&z.circuit, &cfg).unwrap().status, Status::Zero);
        }
    }
}
