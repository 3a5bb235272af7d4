use rand::Rng;

use crate::seqspace::Perm;

use super::ast::{PermSpec, Term};

/// A random term of depth at most `max_depth` whose substitution nodes are
/// valid in dimension `n`, over the variables `vars`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, n: usize, vars: &[&str]) -> Term {
    if max_depth <= 1 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..6) {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let d = max_depth - 1;
    match rng.gen_range(0..5) {
        0 => Term::not(random_term(rng, d, n, vars)),
        1 => Term::and(random_term(rng, d, n, vars), random_term(rng, d, n, vars)),
        2 => Term::or(random_term(rng, d, n, vars), random_term(rng, d, n, vars)),
        3 if n >= 2 => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            Term::subst(PermSpec::Transposition(i, j), random_term(rng, d, n, vars))
        }
        _ => {
            let perms = Perm::all(n);
            let f = &perms[rng.gen_range(0..perms.len())];
            Term::subst(PermSpec::from_perm(f), random_term(rng, d, n, vars))
        }
    }
}
