#ifndef DPFLOW_PARAMS_HPP
#define DPFLOW_PARAMS_HPP

/**
 * @file params.hpp
 * @brief Model parameters for radial flow in a double-porosity reservoir.
 *
 * Holds the dimensional rock/fluid description, the dimensionless parameter
 * set (omega, lambda, r_ext, q_ext, gamma), the boundary-condition case, and
 * the nondimensionalization maps between them. All quantities are SI.
 */

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpflow {

/// Boundary-condition case: inner (bottomhole) condition first, outer second.
/// D = prescribed head (Dirichlet), N = prescribed flux (Neumann).
enum class BoundaryCase { DD, DN, ND, NN };

inline const char* to_string(BoundaryCase c) {
    switch (c) {
        case BoundaryCase::DD: return "DD";
        case BoundaryCase::DN: return "DN";
        case BoundaryCase::ND: return "ND";
        case BoundaryCase::NN: return "NN";
    }
    return "??";
}

inline BoundaryCase boundary_case_from_string(const std::string& s) {
    if (s == "dd" || s == "DD") return BoundaryCase::DD;
    if (s == "dn" || s == "DN") return BoundaryCase::DN;
    if (s == "nd" || s == "ND") return BoundaryCase::ND;
    if (s == "nn" || s == "NN") return BoundaryCase::NN;
    throw std::invalid_argument("unknown boundary case: " + s);
}

/// True when the inner boundary prescribes the flux (ND, NN).
inline bool inner_is_neumann(BoundaryCase c) {
    return c == BoundaryCase::ND || c == BoundaryCase::NN;
}

/// True when the outer boundary prescribes the flux (DN, NN).
inline bool outer_is_neumann(BoundaryCase c) {
    return c == BoundaryCase::DN || c == BoundaryCase::NN;
}

/**
 * @brief Dimensional reservoir and fluid properties (SI units).
 *
 * Subscript 1 is the matrix medium, 2 the fracture medium.
 */
struct DimensionalProperties {
    double k1 = 1e-15;        ///< matrix permeability [m^2]
    double k2 = 1e-12;        ///< fracture permeability [m^2]
    double mu = 1e-3;         ///< fluid viscosity [Pa s]
    double rho2 = 1000.0;     ///< fluid density in fractures [kg/m^3]
    double phi1 = 0.15;       ///< matrix porosity [-]
    double phi2 = 0.01;       ///< fracture porosity [-]
    double c1 = 1e-9;         ///< matrix total compressibility [1/Pa]
    double c2 = 1e-9;         ///< fracture total compressibility [1/Pa]
    double alpha = 1.0;       ///< shape factor [1/m^2]
    double r_w = 0.1;         ///< well radius [m]
    double r_ext_dim = 10.0;  ///< external radius [m]
    double h0 = 100.0;        ///< reference hydraulic head [m]
    double h_w = 50.0;        ///< bottomhole hydraulic head [m]
    double h_thick = 10.0;    ///< formation thickness [m]
    double q = 1e-3;          ///< volumetric rate [m^3/s]

    void validate() const {
        auto pos = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::domain_error(std::string("DimensionalProperties: ") + name +
                                        " must be strictly positive");
        };
        pos(k1, "k1"); pos(k2, "k2"); pos(mu, "mu"); pos(rho2, "rho2");
        pos(phi1, "phi1"); pos(phi2, "phi2"); pos(c1, "c1"); pos(c2, "c2");
        pos(alpha, "alpha"); pos(r_w, "r_w"); pos(r_ext_dim, "r_ext_dim");
        pos(h_thick, "h_thick"); pos(q, "q");
        if (!std::isfinite(h0) || !std::isfinite(h_w))
            throw std::domain_error("DimensionalProperties: h0/h_w must be finite");
        if (h0 == h_w)
            throw std::domain_error("DimensionalProperties: h0 must differ from h_w");
        if (!(r_ext_dim > r_w))
            throw std::domain_error("DimensionalProperties: r_ext_dim must exceed r_w");
    }
};

/**
 * @brief Dimensionless model parameters.
 *
 * omega  fracture storage coefficient, phi2 c2 / (phi1 c1 + phi2 c2)
 * lambda interporosity transmissibility coefficient, alpha r_w^2 k1 / k2
 * r_ext  dimensionless external radius (> 1)
 * q_ext  outer-boundary influx factor (>= 0); consulted for DN and NN only
 * gamma  ramp-slope parameter of the influx condition (> 0); DN and NN only
 *
 * The solvers work entirely in these reduced variables. For reference, the
 * head scalings are
 *
 *   h_iD = (h0 - h_i)/(h0 - h_w)                  constant-pressure cases
 *   h_iD = 2 pi k2 h_thick (h0 - h_i)/(mu q)      constant-rate cases
 *
 * and the bottomhole flux j2D = -dh_2D/dr at r = 1 maps back through
 *
 *   j2 = rho2 k2 (h_w - h0) j2D / (mu r_w)        constant-pressure cases
 *   j2 = -rho2 q j2D / (2 pi r_w h_thick)         constant-rate cases
 */
struct ReservoirParams {
    double omega = 0.1;
    double lambda = 1e-3;
    double r_ext = 100.0;
    double q_ext = 0.0;
    double gamma = 1e-3;
    BoundaryCase bc = BoundaryCase::DD;

    void validate() const {
        if (!(omega > 0.0) || !(omega <= 1.0))
            throw std::domain_error("ReservoirParams: omega must be in (0, 1]");
        if (!(lambda >= 0.0))
            throw std::domain_error("ReservoirParams: lambda must be >= 0");
        if (!(r_ext > 1.0))
            throw std::domain_error("ReservoirParams: r_ext must exceed 1");
        if (!(q_ext >= 0.0))
            throw std::domain_error("ReservoirParams: q_ext must be >= 0");
        if (!(gamma > 0.0))
            throw std::domain_error("ReservoirParams: gamma must be > 0");
    }

    /// Single-porosity limit: the matrix is absent from the dynamics.
    bool single_porosity() const { return omega == 1.0; }
};

/// Storativity ratio omega = phi2 c2 / (phi1 c1 + phi2 c2).
inline double storativity_ratio(double phi1c1, double phi2c2) {
    if (!(phi1c1 >= 0.0) || !(phi2c2 > 0.0))
        throw std::domain_error("storativity_ratio: needs phi1c1 >= 0 and phi2c2 > 0");
    return phi2c2 / (phi1c1 + phi2c2);
}

/**
 * @brief Map dimensional properties to the dimensionless parameter set.
 *
 * omega = phi2 c2/(phi1 c1 + phi2 c2), lambda = alpha r_w^2 k1/k2,
 * r_ext = r_ext_dim/r_w. q_ext and gamma pass through (used by DN/NN only).
 */
inline ReservoirParams nondimensionalize(const DimensionalProperties& props, BoundaryCase bc,
                                         double q_ext = 0.0, double gamma = 1e-3) {
    props.validate();
    ReservoirParams p;
    p.omega = storativity_ratio(props.phi1 * props.c1, props.phi2 * props.c2);
    p.lambda = props.alpha * props.r_w * props.r_w * props.k1 / props.k2;
    p.r_ext = props.r_ext_dim / props.r_w;
    p.q_ext = q_ext;
    p.gamma = gamma;
    p.bc = bc;
    p.validate();
    return p;
}

/// t_D = k2 t / [mu r_w^2 (phi1 c1 + phi2 c2)].
inline double dimensionless_time(const DimensionalProperties& props, double t_seconds) {
    props.validate();
    if (!(t_seconds >= 0.0))
        throw std::domain_error("dimensionless_time: t must be >= 0");
    return props.k2 * t_seconds /
           (props.mu * props.r_w * props.r_w * (props.phi1 * props.c1 + props.phi2 * props.c2));
}

/// Named parameter presets. These are implementer-chosen working values, not
/// published data.
inline ReservoirParams preset(const std::string& name) {
    ReservoirParams p;
    if (name == "double-porosity-default") {
        p.omega = 0.1;
        p.lambda = 1e-3;
        p.r_ext = 100.0;
        return p;
    }
    if (name == "single-porosity") {
        p.omega = 1.0;
        p.lambda = 0.0;
        p.r_ext = 100.0;
        return p;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace dpflow

#endif  // DPFLOW_PARAMS_HPP
