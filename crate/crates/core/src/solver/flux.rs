use super::problem::Scheme;

/// Bernoulli function `B(z) = z / (eᶻ − 1)`, with `B(0) = 1`.
pub fn bernoulli(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        // 1 − z/2 + z²/12 − z⁴/720
        let z2 = z * z;
        1.0 - 0.5 * z + z2 / 12.0 - z2 * z2 / 720.0
    } else {
        z / z.exp_m1()
    }
}

/// Coefficients of the edge flux `F ≈ a u' + b u ≈ c_left u_left + c_right u_right`
/// on an edge of length `h`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EdgeFlux {
    pub left: f64,
    pub right: f64,
}

pub fn edge_flux(scheme: Scheme, a: f64, b: f64, h: f64) -> EdgeFlux {
    let d = a / h;
    match scheme {
        Scheme::Centered => EdgeFlux {
            left: -d + 0.5 * b,
            right: d + 0.5 * b,
        },
        Scheme::Upwind => {
            let (bl, br) = if b > 0.0 {
                (0.0, b)
            } else if b < 0.0 {
                (b, 0.0)
            } else {
                (0.0, 0.0)
            };
            EdgeFlux {
                left: -d + bl,
                right: d + br,
            }
        }
        Scheme::ExpFitted => {
            let z = b * h / a;
            EdgeFlux {
                left: -d * bernoulli(z),
                right: d * bernoulli(-z),
            }
        }
    }
}
