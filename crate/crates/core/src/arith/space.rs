use super::polynomial::Polynomial;
use super::ratexpr::RatExpr;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    Coord,
    /// Symbolic constant: every coordinate derivative is zero.
    Const,
    /// Derivative of order `order` of a function of coordinate `coord`.
    Jet { coord: usize, order: u32, next: Option<usize> },
}

/// Polynomial ring in the coordinates u1..un extended by symbolic constants and
/// jet variables F, F', F'', ... of single-variable functions. Coordinate
/// derivatives act as total derivatives on jets.
#[derive(Clone, Debug)]
pub struct Space {
    n: usize,
    names: Vec<String>,
    kinds: Vec<VarKind>,
    jets_on: Vec<Vec<usize>>,
}

pub fn jet_name(base: &str, order: u32) -> String {
    format!("{base}{}", "'".repeat(order as usize))
}

impl Space {
    pub fn new(n: usize) -> Self {
        Space {
            n,
            names: (1..=n).map(|i| format!("u{i}")).collect(),
            kinds: vec![VarKind::Coord; n],
            jets_on: vec![Vec::new(); n],
        }
    }

    pub fn add_const(&mut self, name: &str) -> usize {
        self.names.push(name.to_string());
        self.kinds.push(VarKind::Const);
        self.names.len() - 1
    }

    /// Adds jets `name, name', ...` up to `max_order` attached to the 0-based
    /// coordinate `coord`; returns the index of the order-0 variable.
    pub fn add_jet(&mut self, name: &str, coord: usize, max_order: u32) -> usize {
        assert!(coord < self.n, "jet attached to a non-coordinate");
        let first = self.names.len();
        for order in 0..=max_order {
            let next = (order < max_order).then(|| first + order as usize + 1);
            self.names.push(jet_name(name, order));
            self.kinds.push(VarKind::Jet { coord, order, next });
            self.jets_on[coord].push(first + order as usize);
        }
        first
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, v: usize) -> &VarKind {
        &self.kinds[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn var(&self, v: usize) -> Polynomial {
        Polynomial::var(self.nvars(), v)
    }

    pub fn named(&self, name: &str) -> Option<Polynomial> {
        self.index_of(name).map(|v| self.var(v))
    }

    /// Coordinate u^{k+1} (0-based `k`).
    pub fn u(&self, k: usize) -> Polynomial {
        assert!(k < self.n);
        self.var(k)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    pub fn rzero(&self) -> RatExpr {
        RatExpr::zero(self.nvars())
    }

    pub fn rone(&self) -> RatExpr {
        RatExpr::one(self.nvars())
    }

    /// True when `p` involves no jet variable.
    pub fn jet_free(&self, p: &Polynomial) -> bool {
        p.terms().all(|(m, _)| {
            m.0.iter().enumerate().all(|(v, &e)| e == 0 || !matches!(self.kinds[v], VarKind::Jet { .. }))
        })
    }

    /// Total derivative along the 0-based coordinate `k`.
    pub fn d_poly(&self, k: usize, p: &Polynomial) -> Polynomial {
        let mut out = p.partial(k);
        for &j in &self.jets_on[k] {
            if p.degree_in(j) == 0 {
                continue;
            }
            let VarKind::Jet { next, .. } = self.kinds[j] else { unreachable!() };
            let next = next.unwrap_or_else(|| panic!("jet order exceeded for {}", self.names[j]));
            out = &out + &(&p.partial(j) * &self.var(next));
        }
        out
    }

    pub fn d(&self, k: usize, r: &RatExpr) -> RatExpr {
        r.derive(|p| self.d_poly(k, p))
    }

    pub fn fmt(&self, r: &RatExpr) -> String {
        r.to_string_with(&self.names)
    }

    pub fn fmt_poly(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.names)
    }
}
