use rand::Rng as _;

use super::Mat4;
use crate::gf::FiniteField;

/// Uniform random element of `GL_4(q)`, by rejection.
pub fn random_invertible<F: FiniteField>(f: &F, rng: &mut crate::Rng) -> Mat4<F> {
    loop {
        let m = Mat4::from_fn(f.clone(), |_, _| f.random(rng));
        if !f.is_zero(&m.det()) {
            return m;
        }
    }
}

/// Element of order 3 in `GL_4(q)`: a random conjugate of `C + I_2` or `C + C`, where `C`
/// is the companion matrix of `T^2 + T + 1`. Every semisimple element of order 3 is of this
/// form; in characteristic 3 the result is unipotent.
pub fn random_gl4_order_three<F: FiniteField>(f: &F, rng: &mut crate::Rng) -> Mat4<F> {
    let c = [[0, -1], [1, -1]];
    let mut d = [[0i64; 4]; 4];
    let blocks = rng.gen_range(1..=2);
    for b in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                d[2 * b + i][2 * b + j] = if b < blocks { c[i][j] } else { (i == j) as i64 };
            }
        }
    }
    let p = random_invertible(f, rng);
    p.mul(&Mat4::from_i64(f.clone(), d)).mul(&p.inverse().expect("invertible by construction"))
}
