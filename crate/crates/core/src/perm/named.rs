use super::{Perm, PermError, PermGroup};

fn cycle(n: usize, syms: &[usize]) -> Perm {
    Perm::from_cycles(n, &[syms]).expect("valid cycle")
}

pub fn trivial(n: usize) -> PermGroup {
    PermGroup::trivial(n).with_name("1")
}

pub fn symmetric(n: usize) -> PermGroup {
    let gens = if n < 2 {
        Vec::new()
    } else {
        vec![cycle(n, &[1, 2]), cycle(n, &(1..=n).collect::<Vec<_>>())]
    };
    PermGroup::closure(n, &gens).expect("same degree").with_name(format!("S{n}"))
}

pub fn alternating(n: usize) -> PermGroup {
    let gens: Vec<Perm> = (3..=n).map(|k| cycle(n, &[1, 2, k])).collect();
    PermGroup::closure(n, &gens).expect("same degree").with_name(format!("A{n}"))
}

pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n < 2 { Vec::new() } else { vec![cycle(n, &(1..=n).collect::<Vec<_>>())] };
    PermGroup::closure(n, &gens).expect("same degree").with_name(format!("Z{n}"))
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon
/// (`n >= 3`). `D2` denotes the Klein four-group on four symbols.
pub fn dihedral(n: usize) -> Result<PermGroup, PermError> {
    match n {
        2 => Ok(klein4().with_name("D2")),
        n if n >= 3 => {
            let rot = cycle(n, &(1..=n).collect::<Vec<_>>());
            // reflection i -> 2 - i (mod n) on 1-based labels
            let images: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            let refl = Perm::from_images(images)?;
            Ok(PermGroup::closure(n, &[rot, refl])?.with_name(format!("D{n}")))
        }
        _ => Err(PermError::UnknownGroup(format!("D{n}"))),
    }
}

/// The Klein four-group `{e, (1,2)(3,4), (1,3)(2,4), (1,4)(2,3)}`.
pub fn klein4() -> PermGroup {
    let a = Perm::parse("(1,2)(3,4)", 4).expect("valid");
    let b = Perm::parse("(1,3)(2,4)", 4).expect("valid");
    PermGroup::closure(4, &[a, b]).expect("same degree").with_name("V4")
}

/// The Frobenius group of order 20, generated by `(1,2,3,4,5)` and `(2,3,5,4)`.
pub fn frobenius20() -> PermGroup {
    let g = Perm::parse("(1,2,3,4,5)", 5).expect("valid");
    let h = Perm::parse("(2,3,5,4)", 5).expect("valid");
    PermGroup::closure(5, &[g, h]).expect("same degree").with_name("F20")
}

/// Looks up `S4`, `A5`, `Z5` (or `C5`), `D4`, `D2`, `V4`, `F20`.
pub fn named_group(name: &str) -> Result<PermGroup, PermError> {
    let name = name.trim();
    let unknown = || PermError::UnknownGroup(name.to_string());
    match name {
        "V4" => return Ok(klein4()),
        "F20" => return Ok(frobenius20()),
        _ => {}
    }
    let (kind, num) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = num.parse().map_err(|_| unknown())?;
    if n == 0 || n > 8 {
        return Err(unknown());
    }
    match kind {
        "S" => Ok(symmetric(n)),
        "A" => Ok(alternating(n)),
        "Z" | "C" => Ok(cyclic(n)),
        "D" => dihedral(n),
        _ => Err(unknown()),
    }
}
