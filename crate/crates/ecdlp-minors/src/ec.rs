//! Elliptic-curve group arithmetic over both field kinds, plus instance
//! management: parsing, serialization and desk-scale generation of discrete
//! logarithm instances with a prime group order.
//!
//! The group law is the general Weierstrass chord-and-tangent law
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, valid in every
//! characteristic; prime-field instances use `a1 = a2 = a3 = 0`.

use std::fmt;

use rand::Rng;

use crate::ff::{artin_schreier_root, is_prime, FieldElement, FieldSpec};

#[derive(Clone, Debug)]
pub enum EcError {
    FieldMismatch,
    SingularCurve,
    PointNotOnCurve {
        x: String,
        y: String,
    },
    /// Instance invariant failures and file-format problems, with the
    /// offending line when it comes from a file.
    Parse {
        line: usize,
        message: String,
    },
    Invalid(String),
    GenerationBudget {
        attempts: u32,
    },
}

impl fmt::Display for EcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EcError::FieldMismatch => write!(f, "point and curve live in different fields"),
            EcError::SingularCurve => write!(f, "discriminant is zero: curve is singular"),
            EcError::PointNotOnCurve { x, y } => {
                write!(f, "({x}, {y}) does not satisfy the curve equation")
            }
            EcError::Parse { line, message } => write!(f, "line {line}: {message}"),
            EcError::Invalid(m) => write!(f, "invalid instance: {m}"),
            EcError::GenerationBudget { attempts } => {
                write!(f, "no prime-order curve found within {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for EcError {}

/// Coefficients of a general Weierstrass equation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CurveParams {
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub a3: FieldElement,
    pub a4: FieldElement,
    pub a6: FieldElement,
}

/// A rational point: affine or the identity at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Point {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Projective view `(x : y : z)` with `z` fixed to 1 for affine points
    /// and `(0 : 1 : 0)` for the identity.
    pub fn projective(&self, field: FieldSpec) -> (FieldElement, FieldElement, FieldElement) {
        match *self {
            Point::Infinity => (field.zero(), field.one(), field.zero()),
            Point::Affine { x, y } => (x, y, field.one()),
        }
    }

    pub fn affine(&self) -> Option<(FieldElement, FieldElement)> {
        match *self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// A non-singular Weierstrass curve bound to its field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Curve {
    field: FieldSpec,
    params: CurveParams,
}

impl Curve {
    /// Build and validate: all coefficients in `field`, discriminant non-zero.
    pub fn new(field: FieldSpec, params: CurveParams) -> Result<Self, EcError> {
        for e in [params.a1, params.a2, params.a3, params.a4, params.a6] {
            if e.spec() != field {
                return Err(EcError::FieldMismatch);
            }
        }
        let curve = Curve { field, params };
        if curve.discriminant().is_zero() {
            return Err(EcError::SingularCurve);
        }
        Ok(curve)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    /// The standard b2/b4/b6/b8 discriminant, computed inside the field so
    /// it is valid in every characteristic.
    pub fn discriminant(&self) -> FieldElement {
        let CurveParams { a1, a2, a3, a4, a6 } = self.params;
        let f = self.field;
        let c = |n: u64| f.embed_int(n);
        let b2 = a1 * a1 + c(4) * a2;
        let b4 = c(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + c(4) * a6;
        let b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -(b2 * b2 * b8) - c(8) * b4 * b4 * b4 - c(27) * b6 * b6 + c(9) * b2 * b4 * b6
    }

    /// True iff `pt` is the identity or satisfies the Weierstrass equation.
    pub fn validate_point(&self, pt: &Point) -> Result<bool, EcError> {
        match *pt {
            Point::Infinity => Ok(true),
            Point::Affine { x, y } => {
                if x.spec() != self.field || y.spec() != self.field {
                    return Err(EcError::FieldMismatch);
                }
                let CurveParams { a1, a2, a3, a4, a6 } = self.params;
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                Ok(lhs == rhs)
            }
        }
    }

    fn assert_on_curve(&self, pt: &Point) -> Result<(), EcError> {
        if self.validate_point(pt)? {
            Ok(())
        } else {
            let (x, y) = pt.affine().expect("identity always validates");
            Err(EcError::PointNotOnCurve {
                x: x.encode(),
                y: y.encode(),
            })
        }
    }

    pub fn neg(&self, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let CurveParams { a1, a3, .. } = self.params;
                Point::Affine {
                    x,
                    y: -y - a1 * x - a3,
                }
            }
        }
    }

    /// Chord-and-tangent addition covering every degenerate branch.
    pub fn add(&self, p1: &Point, p2: &Point) -> Result<Point, EcError> {
        self.assert_on_curve(p1)?;
        self.assert_on_curve(p2)?;
        let (x1, y1) = match p1.affine() {
            None => return Ok(*p2),
            Some(xy) => xy,
        };
        let (x2, y2) = match p2.affine() {
            None => return Ok(*p1),
            Some(xy) => xy,
        };
        let CurveParams { a1, a2, a3, a4, a6 } = self.params;
        let f = self.field;
        let c = |n: u64| f.embed_int(n);

        let (lambda, nu) = if x1 != x2 {
            let dx_inv = (x2 - x1).inv().expect("x1 != x2");
            ((y2 - y1) * dx_inv, (y1 * x2 - y2 * x1) * dx_inv)
        } else if *p2 == self.neg(p1) {
            return Ok(Point::Infinity);
        } else {
            // x1 == x2 and p2 != -p1 forces p1 == p2 (two y-roots per x).
            let denom = c(2) * y1 + a1 * x1 + a3;
            let denom_inv = denom.inv().expect("p1 is not 2-torsion here");
            let lambda = (c(3) * x1 * x1 + c(2) * a2 * x1 + a4 - a1 * y1) * denom_inv;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + c(2) * a6 - a3 * y1) * denom_inv;
            (lambda, nu)
        };
        let x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
        let y3 = -(lambda + a1) * x3 - nu - a3;
        Ok(Point::Affine { x: x3, y: y3 })
    }

    pub fn double(&self, pt: &Point) -> Result<Point, EcError> {
        self.add(pt, pt)
    }

    /// Signed multiple: `(-n) * P = n * (-P)`.
    pub fn scalar_mul_signed(&self, pt: &Point, n: i64) -> Result<Point, EcError> {
        if n < 0 {
            self.scalar_mul(&self.neg(pt), n.unsigned_abs())
        } else {
            self.scalar_mul(pt, n as u64)
        }
    }

    /// Double-and-add; negative multiples go through [`Curve::neg`].
    pub fn scalar_mul(&self, pt: &Point, n: u64) -> Result<Point, EcError> {
        self.assert_on_curve(pt)?;
        let mut acc = Point::Infinity;
        let mut base = *pt;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The y-solutions over a given x, sorted by representative.
    fn y_roots(&self, x: FieldElement) -> Vec<FieldElement> {
        let CurveParams { a1, a2, a3, a4, a6 } = self.params;
        let f = self.field;
        // y^2 + c y = d
        let cc = a1 * x + a3;
        let d = x * x * x + a2 * x * x + a4 * x + a6;
        let mut roots = if f.is_binary() {
            if cc.is_zero() {
                vec![d.sqrt().expect("squaring is onto in char 2")]
            } else {
                let cc2_inv = (cc * cc).inv().expect("cc non-zero");
                match artin_schreier_root(d * cc2_inv) {
                    Some(z) => vec![cc * z, cc * z + cc],
                    None => vec![],
                }
            }
        } else {
            // complete the square: (y + c/2)^2 = d + c^2/4
            let half = f.embed_int(2).inv().expect("odd characteristic");
            let shift = cc * half;
            match (d + shift * shift).sqrt() {
                Some(r) if r.is_zero() => vec![-shift],
                Some(r) => vec![r - shift, -r - shift],
                None => vec![],
            }
        };
        roots.sort_by_key(FieldElement::value);
        roots.dedup();
        roots
    }

    /// Uniform random affine point. Samples an x and a root slot; a slot
    /// that does not exist triggers a resample, which weights every affine
    /// point equally.
    pub fn random_point(&self, rng: &mut impl Rng) -> Point {
        loop {
            let x = self.field.random(rng);
            let slot = rng.gen_range(0..2usize);
            let roots = self.y_roots(x);
            if slot < roots.len() {
                return Point::Affine { x, y: roots[slot] };
            }
        }
    }

    /// Number of rational points including the identity, by brute-force
    /// enumeration of x. Desk scale: fields up to about 2^24.
    pub fn count_points(&self) -> u64 {
        let q = self.field.order() as u64;
        let mut n = 1u64;
        match self.field {
            FieldSpec::Prime { .. } => {
                for xv in 0..q {
                    n += self.y_roots(self.field.from_int(xv)).len() as u64;
                }
            }
            FieldSpec::Binary { .. } => {
                let CurveParams { a1, a2, a3, a4, a6 } = self.params;
                for xv in 0..q {
                    let x = self.field.from_int(xv);
                    let cc = a1 * x + a3;
                    let d = x * x * x + a2 * x * x + a4 * x + a6;
                    if cc.is_zero() {
                        n += 1;
                    } else {
                        let u = d * (cc * cc).inv().expect("cc non-zero");
                        if u.trace() == 0 {
                            n += 2;
                        }
                    }
                }
            }
        }
        n
    }
}

/// A discrete-logarithm instance: curve, base point `P`, target `Q = mP`,
/// prime group order, and optionally the planted answer.
#[derive(Clone, Debug)]
pub struct CurveInstance {
    pub curve: Curve,
    pub p: Point,
    pub q: Point,
    /// Prime order of the group of rational points.
    pub order: u64,
    /// Present on test instances generated with `--with-solution`.
    pub known_m: Option<u64>,
}

impl CurveInstance {
    /// Check every instance invariant; used by the parser and the generator.
    pub fn validate(&self) -> Result<(), EcError> {
        if !is_prime(self.order) {
            return Err(EcError::Invalid(format!(
                "group order {} is not prime",
                self.order
            )));
        }
        if self.p.is_infinity() || self.q.is_infinity() {
            return Err(EcError::Invalid("P and Q must be finite points".into()));
        }
        self.curve.assert_on_curve(&self.p)?;
        self.curve.assert_on_curve(&self.q)?;
        if !self.curve.scalar_mul(&self.p, self.order)?.is_infinity() {
            return Err(EcError::Invalid("order * P is not the identity".into()));
        }
        if !self.curve.scalar_mul(&self.q, self.order)?.is_infinity() {
            return Err(EcError::Invalid("order * Q is not the identity".into()));
        }
        if let Some(m) = self.known_m {
            if m == 0 || m >= self.order {
                return Err(EcError::Invalid(format!("m = {m} is outside [1, order)")));
            }
            if self.curve.scalar_mul(&self.p, m)? != self.q {
                return Err(EcError::Invalid("known m does not satisfy Q = mP".into()));
            }
        }
        Ok(())
    }

    /// Serialize in the line-oriented instance format. Exact and canonical:
    /// parsing the output reproduces the input byte for byte.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        match self.curve.field() {
            FieldSpec::Prime { p } => out.push_str(&format!("field prime {p}\n")),
            FieldSpec::Binary { m, poly } => out.push_str(&format!("field binary {m} {poly:#x}\n")),
        }
        let CurveParams { a1, a2, a3, a4, a6 } = self.curve.params();
        out.push_str(&format!("curve {a1} {a2} {a3} {a4} {a6}\n"));
        out.push_str(&format!("order {}\n", self.order));
        let (px, py) = self.p.affine().expect("P is finite");
        out.push_str(&format!("P {px} {py}\n"));
        let (qx, qy) = self.q.affine().expect("Q is finite");
        out.push_str(&format!("Q {qx} {qy}\n"));
        if let Some(m) = self.known_m {
            out.push_str(&format!("m {m}\n"));
        }
        out
    }

    /// Parse the instance format, with line-numbered diagnostics, and
    /// validate all invariants.
    pub fn parse(text: &str) -> Result<Self, EcError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let mut next = |what: &str| {
            lines.next().ok_or_else(|| EcError::Parse {
                line: 0,
                message: format!("missing {what} line"),
            })
        };

        let (ln, field_line) = next("field")?;
        let toks: Vec<&str> = field_line.split_whitespace().collect();
        let field = match toks.as_slice() {
            ["field", "prime", p] => {
                let p: u64 = p.parse().map_err(|_| EcError::Parse {
                    line: ln,
                    message: format!("bad prime modulus {p:?}"),
                })?;
                FieldSpec::prime(p).map_err(|e| EcError::Parse {
                    line: ln,
                    message: e.to_string(),
                })?
            }
            ["field", "binary", m, poly] => {
                let m: u32 = m.parse().map_err(|_| EcError::Parse {
                    line: ln,
                    message: format!("bad extension degree {m:?}"),
                })?;
                let hex = poly.strip_prefix("0x").ok_or_else(|| EcError::Parse {
                    line: ln,
                    message: format!("irreducible must be 0x-hex, got {poly:?}"),
                })?;
                let poly = u64::from_str_radix(hex, 16).map_err(|_| EcError::Parse {
                    line: ln,
                    message: format!("bad hex {poly:?}"),
                })?;
                FieldSpec::binary(m, poly).map_err(|e| EcError::Parse {
                    line: ln,
                    message: e.to_string(),
                })?
            }
            _ => return Err(EcError::Parse {
                line: ln,
                message: format!(
                    "expected `field prime <p>` or `field binary <m> <0x..>`, got {field_line:?}"
                ),
            }),
        };

        let parse_elem = |ln: usize, s: &str| {
            field.parse_element(s).map_err(|e| EcError::Parse {
                line: ln,
                message: e.to_string(),
            })
        };

        let (ln, curve_line) = next("curve")?;
        let toks: Vec<&str> = curve_line.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "curve" {
            return Err(EcError::Parse {
                line: ln,
                message: format!("expected `curve <a1> <a2> <a3> <a4> <a6>`, got {curve_line:?}"),
            });
        }
        let params = CurveParams {
            a1: parse_elem(ln, toks[1])?,
            a2: parse_elem(ln, toks[2])?,
            a3: parse_elem(ln, toks[3])?,
            a4: parse_elem(ln, toks[4])?,
            a6: parse_elem(ln, toks[5])?,
        };
        let curve = Curve::new(field, params).map_err(|e| EcError::Parse {
            line: ln,
            message: e.to_string(),
        })?;

        let (ln, order_line) = next("order")?;
        let order = match order_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["order", n] => n.parse::<u64>().map_err(|_| EcError::Parse {
                line: ln,
                message: format!("bad order {n:?}"),
            })?,
            _ => {
                return Err(EcError::Parse {
                    line: ln,
                    message: format!("expected `order <decimal>`, got {order_line:?}"),
                })
            }
        };

        let mut parse_point = |name: &str| -> Result<Point, EcError> {
            let (ln, line) = next(name)?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != name {
                return Err(EcError::Parse {
                    line: ln,
                    message: format!("expected `{name} <x> <y>`, got {line:?}"),
                });
            }
            Ok(Point::Affine {
                x: parse_elem(ln, toks[1])?,
                y: parse_elem(ln, toks[2])?,
            })
        };
        let p = parse_point("P")?;
        let q = parse_point("Q")?;

        let known_m = match lines.next() {
            None => None,
            Some((ln, line)) => match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["m", v] => Some(v.parse::<u64>().map_err(|_| EcError::Parse {
                    line: ln,
                    message: format!("bad m {v:?}"),
                })?),
                _ => {
                    return Err(EcError::Parse {
                        line: ln,
                        message: format!("expected `m <decimal>` or end of file, got {line:?}"),
                    })
                }
            },
        };
        if let Some((ln, line)) = lines.next() {
            return Err(EcError::Parse {
                line: ln,
                message: format!("trailing content {line:?}"),
            });
        }

        let instance = CurveInstance {
            curve,
            p,
            q,
            order,
            known_m,
        };
        instance.validate()?;
        Ok(instance)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldKind {
    Prime,
    Binary,
}

impl std::str::FromStr for FieldKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prime" => Ok(FieldKind::Prime),
            "binary" => Ok(FieldKind::Binary),
            other => Err(format!(
                "unknown field kind {other:?} (expected prime|binary)"
            )),
        }
    }
}

const GEN_CURVE_ATTEMPTS: u32 = 4000;

/// Generate a desk-scale instance: a field of about `bits` bits, a curve
/// whose group of rational points has prime order (found by brute-force
/// counting), a random base point and a random target `Q = mP`.
///
/// Binary fields get `a1 = a2 = 0, a3 != 0` curves: a non-zero `a1` always
/// yields a rational 2-torsion point in characteristic 2, so those groups
/// can never have odd prime order.
pub fn gen_instance(
    bits: u32,
    kind: FieldKind,
    rng: &mut impl Rng,
    with_solution: bool,
) -> Result<CurveInstance, EcError> {
    assert!(
        (4..=24).contains(&bits),
        "desk-scale generation wants 4..=24 bits, got {bits}"
    );
    let field = match kind {
        FieldKind::Prime => {
            let lo = 1u64 << (bits - 1);
            let hi = 1u64 << bits;
            loop {
                let cand = rng.gen_range(lo..hi) | 1;
                if let Ok(f) = FieldSpec::prime(cand) {
                    break f;
                }
            }
        }
        FieldKind::Binary => {
            loop {
                // random monic polynomial with non-zero constant term
                let body = (rng.gen::<u64>() & ((1u64 << bits) - 1)) | 1;
                let poly = (1u64 << bits) | body;
                if let Ok(f) = FieldSpec::binary(bits, poly) {
                    break f;
                }
            }
        }
    };

    for _ in 0..GEN_CURVE_ATTEMPTS {
        let params = match kind {
            FieldKind::Prime => CurveParams {
                a1: field.zero(),
                a2: field.zero(),
                a3: field.zero(),
                a4: field.random(rng),
                a6: field.random(rng),
            },
            FieldKind::Binary => CurveParams {
                a1: field.zero(),
                a2: field.zero(),
                a3: field.random_nonzero(rng),
                a4: field.random(rng),
                a6: field.random(rng),
            },
        };
        let Ok(curve) = Curve::new(field, params) else {
            continue;
        };
        let order = curve.count_points();
        if order < 5 || !is_prime(order) {
            continue;
        }
        // Prime order: every finite point generates the whole group.
        let p = curve.random_point(rng);
        let m = rng.gen_range(1..order);
        let q = curve.scalar_mul(&p, m).expect("p is on the curve");
        let instance = CurveInstance {
            curve,
            p,
            q,
            order,
            known_m: with_solution.then_some(m),
        };
        instance.validate()?;
        return Ok(instance);
    }
    Err(EcError::GenerationBudget {
        attempts: GEN_CURVE_ATTEMPTS,
    })
}
