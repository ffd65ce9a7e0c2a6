/// A square matrix with entries in `0..modulus`.
pub type Matrix = Vec<Vec<u32>>;

/// `v g` with entries reduced mod `modulus`.
pub fn apply_matrix(v: &[u32], g: &[Vec<u32>], modulus: u32) -> Vec<u32> {
    let m = modulus as u64;
    let n = g.first().map_or(0, Vec::len);
    let mut out = vec![0u64; n];
    for (&x, row) in v.iter().zip(g) {
        if x != 0 {
            for (o, &y) in out.iter_mut().zip(row) {
                *o = (*o + x as u64 * y as u64) % m;
            }
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// A generator of the cyclic unit group of `Z/modulus` (`modulus` a prime
/// or the square of a prime).
pub fn unit_generator(modulus: u32) -> u32 {
    if modulus <= 2 {
        return 1;
    }
    let units: Vec<u32> = (1..modulus).filter(|&a| gcd(a, modulus) == 1).collect();
    let order = units.len();
    units
        .iter()
        .copied()
        .find(|&g| {
            let mut x = 1u64;
            (1..=order).all(|k| {
                x = x * g as u64 % modulus as u64;
                x != 1 || k == order
            })
        })
        .expect("unit group of Z/p or Z/p^2 is cyclic")
}

/// Generators of `GL_n(Z/modulus)` for a local ring `Z/modulus`: the
/// elementary transvections `I + e_ij` and `diag(u, 1, .., 1)` with `u` a
/// generator of the units.
pub fn gl_generators(n: usize, modulus: u32) -> Vec<Matrix> {
    let identity = || -> Matrix {
        (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
    };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut g = identity();
                g[i][j] = 1;
                gens.push(g);
            }
        }
    }
    let u = unit_generator(modulus);
    if n > 0 && u != 1 {
        let mut g = identity();
        g[0][0] = u;
        gens.push(g);
    }
    gens
}
