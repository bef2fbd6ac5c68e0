//! Commutativity checks on concrete instances.
//!
//! For the integer and global-state regimes the classical answer `A(D_i)` must
//! equal the interpreted quantum answer `M_f(O(Q(M_i(D_i))))`. For linear
//! simulation the quantum-path probabilities must match the classical
//! Schrödinger model within [`COMMUTE_TOL`].

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algo::{
    brute_force_order, classical_probabilities, grover_search, quantum_probabilities, run_period_finding,
    HoppingHamiltonian, Payload, COMMUTE_TOL,
};
use crate::codec::{sample_rows, DirectoryRecord, GlobalAssignmentTable};
use crate::ledger::CostLedger;
use crate::qsim::MeasureMode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub commutes: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiscreteInstance {
    /// `reference` is the user's directory; `stipulated` is the table the
    /// quantum path marks and interprets with.
    Grover {
        reference: Vec<DirectoryRecord>,
        stipulated: Vec<DirectoryRecord>,
        query: String,
    },
    Period {
        a: u64,
        modulus: u64,
        seed: u64,
    },
}

pub fn verify_discrete(instance: &DiscreteInstance) -> Verdict {
    match instance {
        DiscreteInstance::Grover {
            reference,
            stipulated,
            query,
        } => {
            let name = format!("grover query={query}");
            let classical = reference.iter().find(|r| &r.phone_number == query);
            let quantum = GlobalAssignmentTable::from_rows(stipulated.clone(), &mut CostLedger::new())
                .and_then(|table| grover_search(&table, &table, query, MeasureMode::Argmax, 0, &mut CostLedger::new()));
            match (classical, quantum) {
                (Some(c), Ok(q)) => {
                    let commutes = c.phone_number == q.record.phone_number && c.uid == q.record.uid;
                    Verdict {
                        name,
                        commutes,
                        detail: format!(
                            "classical uid {} / quantum uid {} ({})",
                            c.uid, q.record.uid, q.record.phone_number
                        ),
                    }
                }
                (None, _) => Verdict {
                    name,
                    commutes: false,
                    detail: "query absent from the reference directory".into(),
                },
                (_, Err(e)) => Verdict {
                    name,
                    commutes: false,
                    detail: format!("quantum path failed: {e}"),
                },
            }
        }
        DiscreteInstance::Period { a, modulus, seed } => {
            let name = format!("period a={a} M={modulus}");
            let classical = brute_force_order(*a, *modulus);
            let quantum = run_period_finding(*a, *modulus, *seed).map(|r| match r.payload {
                Payload::Period { order, .. } => order,
                _ => None,
            });
            match (classical, quantum) {
                (Some(c), Ok(Some(q))) => Verdict {
                    name,
                    commutes: c == q,
                    detail: format!("classical r={c} / quantum r={q}"),
                },
                (c, q) => Verdict {
                    name,
                    commutes: false,
                    detail: format!("classical {c:?} / quantum {q:?}"),
                },
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimulationFault {
    #[default]
    None,
    /// Run the classical model with `t → −t`.
    ReversedTime,
}

pub fn verify_simulation(h: &HoppingHamiltonian, initial: &[Complex64], fault: SimulationFault) -> Verdict {
    let name = format!("linsim sites={} t={}", h.sites(), h.time());
    let classical_h = match fault {
        SimulationFault::None => h.clone(),
        SimulationFault::ReversedTime => h.with_time(-h.time()),
    };
    match (
        quantum_probabilities(h, initial),
        classical_probabilities(&classical_h, initial),
    ) {
        (Ok(q), Ok(c)) => {
            let max = q.iter().zip(&c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            Verdict {
                name,
                commutes: max <= COMMUTE_TOL,
                detail: format!("max probability discrepancy {max:.3e}"),
            }
        }
        (Err(e), _) | (_, Err(e)) => Verdict {
            name,
            commutes: false,
            detail: e.to_string(),
        },
    }
}

/// Sample-directory search, small order-finding cases, and chain/ring
/// simulations at several times.
pub fn default_verifications(fixture: Option<&[DirectoryRecord]>, seed: u64) -> Vec<Verdict> {
    let rows = fixture.map_or_else(sample_rows, <[DirectoryRecord]>::to_vec);
    let mut out: Vec<Verdict> = rows
        .iter()
        .map(|r| {
            verify_discrete(&DiscreteInstance::Grover {
                reference: rows.clone(),
                stipulated: rows.clone(),
                query: r.phone_number.clone(),
            })
        })
        .collect();
    for (a, modulus) in [(2, 3), (7, 15)] {
        out.push(verify_discrete(&DiscreteInstance::Period { a, modulus, seed }));
    }
    for n in [2, 4, 8] {
        let site0: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0))
            .collect();
        for t in [0.0, 0.5, FRAC_PI_2, 3.0] {
            for h in [
                HoppingHamiltonian::chain(n, 1.0, t),
                HoppingHamiltonian::ring(n, 1.0, t),
            ] {
                let h = h.expect("shipped Hamiltonians are valid");
                out.push(verify_simulation(&h, &site0, SimulationFault::None));
            }
        }
    }
    out
}
