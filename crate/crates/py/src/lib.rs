//! Python bindings: problems, bases, the direct and modular computations,
//! verification, rational reconstruction, and the built-in self tests.

use freegb_core::arith::word::Alphabet;
use freegb_core::arith::Rationals;
use freegb_core::engine::basis::SigBasis;
use freegb_core::engine::{verification_test, EngineOptions, QueuePolicy, VerifyMode};
use freegb_core::modular::{self, ModularConfig, PrimeSource, VerifyChoice};
use freegb_core::oracles;
use freegb_core::order::SigBound;
use freegb_core::problem::{self, parse_bound};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn to_py_err(e: freegb_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A basis together with the alphabet it renders under.
#[pyclass]
struct Basis {
    inner: SigBasis<Rationals>,
    alphabet: Alphabet,
}

#[pymethods]
impl Basis {
    /// `(signature, polynomial)` pairs in canonical text form, ascending by
    /// signature.
    fn elements(&self) -> Vec<(String, String)> {
        self.inner
            .elements
            .iter()
            .map(|e| {
                (
                    e.sig.render(&self.alphabet),
                    freegb_core::arith::render_poly(&e.poly, &self.alphabet, &Rationals),
                )
            })
            .collect()
    }

    /// Recorded syzygy signatures in text form.
    fn syzygies(&self) -> Vec<String> {
        self.inner
            .syzygies
            .iter()
            .map(|s| s.render(&self.alphabet))
            .collect()
    }

    /// The canonical basis file contents.
    fn render(&self) -> String {
        freegb_core::engine::render_basis(&self.inner, &self.alphabet)
    }

    fn __len__(&self) -> usize {
        self.inner.elements.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "<Basis: {} elements, {} syzygies>",
            self.inner.elements.len(),
            self.inner.syzygies.len()
        )
    }
}

#[pyclass]
struct Problem {
    inner: problem::Problem,
}

impl Problem {
    fn bound_from(&self, sig_degree: Option<u64>, sig_bound: Option<&str>) -> PyResult<SigBound> {
        let explicit = match (sig_degree, sig_bound) {
            (Some(d), _) => Some(SigBound::SigDegree(d)),
            (None, Some(m)) => {
                Some(parse_bound(m, &self.inner.alphabet, self.inner.rank()).map_err(to_py_err)?)
            }
            (None, None) => None,
        };
        self.inner.effective_bound(explicit).map_err(to_py_err)
    }
}

#[pymethods]
impl Problem {
    /// Parse a problem from its text form (see the README for the format).
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Problem {
            inner: problem::parse_problem(text).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Ok(Problem {
            inner: problem::Problem::from_file(std::path::Path::new(path)).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.alphabet.names().to_vec()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.render_gens()
    }

    /// Direct computation over Q.
    #[pyo3(signature = (sig_degree=None, sig_bound=None, strong=false))]
    fn gb(
        &self,
        sig_degree: Option<u64>,
        sig_bound: Option<&str>,
        strong: bool,
    ) -> PyResult<Basis> {
        let bound = self.bound_from(sig_degree, sig_bound)?;
        let options = EngineOptions {
            strong,
            queue_policy: QueuePolicy::LmaFirst,
        };
        let basis = self.inner.gb(&bound, options).map_err(to_py_err)?;
        if strong {
            let report =
                verification_test(&self.inner.mord, &basis, &self.inner.gens).map_err(to_py_err)?;
            if !report.ok {
                return Err(PyValueError::new_err(
                    report.render(&self.inner.alphabet).join("; "),
                ));
            }
        }
        Ok(Basis {
            inner: basis,
            alphabet: self.inner.alphabet.clone(),
        })
    }

    /// Modular multi-prime computation; returns the basis and the
    /// machine-readable transcript.
    #[pyo3(signature = (sig_degree=None, sig_bound=None, seed=0, threads=None,
                        prime_bits=31, initial_primes=None, max_rounds=10,
                        probabilistic=false, strong=false, force_primes=vec![]))]
    #[allow(clippy::too_many_arguments)]
    fn gb_modular(
        &self,
        sig_degree: Option<u64>,
        sig_bound: Option<&str>,
        seed: u64,
        threads: Option<usize>,
        prime_bits: u32,
        initial_primes: Option<usize>,
        max_rounds: usize,
        probabilistic: bool,
        strong: bool,
        force_primes: Vec<u64>,
    ) -> PyResult<(Basis, String)> {
        let bound = self.bound_from(sig_degree, sig_bound)?;
        let config = ModularConfig {
            seed,
            threads: threads
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            initial_primes,
            max_rounds,
            prime_bits,
            verify: if probabilistic {
                VerifyChoice::Probabilistic
            } else {
                VerifyChoice::Exact
            },
            strong,
            force_primes,
            queue_policy: QueuePolicy::LmaFirst,
        };
        let (basis, _, transcript) = self.inner.gb_modular(&bound, &config).map_err(to_py_err)?;
        Ok((
            Basis {
                inner: basis,
                alphabet: self.inner.alphabet.clone(),
            },
            transcript.render(),
        ))
    }

    /// Parse a basis file against this problem.
    #[pyo3(signature = (text, sig_degree=None, sig_bound=None))]
    fn parse_basis(
        &self,
        text: &str,
        sig_degree: Option<u64>,
        sig_bound: Option<&str>,
    ) -> PyResult<Basis> {
        let bound = self.bound_from(sig_degree, sig_bound)?;
        Ok(Basis {
            inner: self.inner.parse_basis(text, bound).map_err(to_py_err)?,
            alphabet: self.inner.alphabet.clone(),
        })
    }

    /// Run the signature verification test; returns `(ok, failure_lines)`.
    #[pyo3(signature = (basis, sig_degree=None, sig_bound=None, probabilistic=false, seed=0))]
    fn verify(
        &self,
        basis: &Basis,
        sig_degree: Option<u64>,
        sig_bound: Option<&str>,
        probabilistic: bool,
        seed: u64,
    ) -> PyResult<(bool, Vec<String>)> {
        let bound = self.bound_from(sig_degree, sig_bound)?;
        let mut candidate = basis.inner.clone();
        candidate.bound = bound;
        let mode = if probabilistic {
            let mut source = PrimeSource::new(seed, 31);
            VerifyMode::Probabilistic {
                prime: source.draw(&self.inner.gens),
            }
        } else {
            VerifyMode::Exact
        };
        let report = self
            .inner
            .verify(&candidate, mode, &[])
            .map_err(to_py_err)?;
        Ok((report.ok, report.render(&self.inner.alphabet)))
    }
}

/// Chinese remaindering: the representative of the residues modulo the
/// product of the primes, as a decimal string.
#[pyfunction]
fn crt_combine(residues: Vec<u64>, primes: Vec<u64>) -> PyResult<String> {
    Ok(modular::crt_combine(&residues, &primes)
        .map_err(to_py_err)?
        .to_string())
}

/// Farey reconstruction of `c` modulo `n`, as `(num, den)` decimal strings,
/// or `None` when no bounded preimage exists.
#[pyfunction]
fn farey_reconstruct(c: u64, n: u64) -> Option<(String, String)> {
    modular::farey_reconstruct(&BigUint::from(c), &BigUint::from(n))
        .map(|q| (q.numer().to_string(), q.denom().to_string()))
}

/// Run the built-in exact oracles; returns the list of failures (empty on
/// success).
#[pyfunction]
#[pyo3(signature = (fib=50, recursion=20, spoly=6))]
fn selftest(fib: usize, recursion: usize, spoly: usize) -> Vec<String> {
    let mut failures = Vec::new();
    if let Err(m) = oracles::check_fib_identities(fib) {
        failures.push(m);
    }
    if let Err(m) = oracles::check_recursion(recursion) {
        failures.push(m);
    }
    if let Err(m) = oracles::check_spoly_reduction(spoly) {
        failures.push(m);
    }
    failures
}

#[pymodule]
fn freegb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Problem>()?;
    m.add_class::<Basis>()?;
    m.add_function(wrap_pyfunction!(crt_combine, m)?)?;
    m.add_function(wrap_pyfunction!(farey_reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
