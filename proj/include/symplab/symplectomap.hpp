#pragma once

#include <symplab/geometry.hpp>
#include <symplab/hamiltonian.hpp>

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace symplab {

// Fixed-step RK4 with refinement: the step is halved until two successive
// runs agree within refine_target, up to max_halvings, else AccuracyError.
struct FlowSettings {
    double step = 1e-3;
    double refine_target = 1e-8;
    int max_halvings = 6;
    bool fd_differential = false;
};

// A diffeomorphism preserving d(lambda), in one of several concrete forms.
// Word composes factors as maps: leftmost factor is applied last.
struct SympMap {
    struct Identity {};
    struct AffineSymplectic {
        Mat A;
        Vec t;
    };
    // z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
    struct MoebiusIsometry {
        Complex a, b;
    };
    struct Flow {
        std::shared_ptr<const HamiltonianSpec> H;
        double time = 1.0;
        FlowSettings settings;
    };
    // Lift of q -> a q + b + c tanh(q) (needs a > |c|) to momentum-position
    // coordinates (x, y): forward map (x, y) -> (x / phi'(y), phi(y)).
    struct CotangentLift {
        double a = 1.0, b = 0.0, c = 0.0;
        bool inverted = false;
    };
    struct Word {
        std::vector<SympMap> factors;
    };

    std::variant<Identity, AffineSymplectic, MoebiusIsometry, Flow, CotangentLift, Word> rep;

    static SympMap identity() { return {Identity{}}; }
    static SympMap affine(Mat A, Vec t);
    static SympMap translation(Vec t);
    static SympMap moebius(Complex a, Complex b);
    static SympMap moebius_rotation(double phi);             // fixes 0
    static SympMap moebius_translation(Complex p);           // sends 0 to p
    static SympMap moebius_axis_translation(double length);  // along the real diameter
    static SympMap flow(std::shared_ptr<const HamiltonianSpec> H, double time = 1.0,
                        FlowSettings settings = {});
    static SympMap cotangent_lift(double a, double b, double c);
    static SympMap word(std::vector<SympMap> factors) { return {Word{std::move(factors)}}; }
};

// Flow of the bump Hamiltonian for unit time; identity outside the ball.
SympMap bump_flow(Vec center, double radius, double amplitude, double time = 1.0,
                  FlowSettings settings = {});

SympMap compose(SympMap g, SympMap h);  // p -> g(h(p))
SympMap inverse(const SympMap& g);
SympMap power(const SympMap& g, int n);

Point apply(const ManifoldModel& model, const SympMap& g, const Point& p);
Mat differential(const ManifoldModel& model, const SympMap& g, const Point& p);

// (g^* lambda - lambda) at p, as a covector: Dg(p)' lambda(g(p)) - lambda(p).
Covector pullback_delta_lambda(const ManifoldModel& model, const SympMap& g, const Point& p);

// max over points of max-norm of Dg' W(g p) Dg - W(p).
double verify_symplectic(const ManifoldModel& model, const SympMap& g,
                         const std::vector<Point>& points);

// X with i_X d(lambda) = dH: J grad H per coordinate pair on the plane,
// additionally divided by the area density on the disk.
Vec hamiltonian_vector_field(const ManifoldModel& model, const HamiltonianSpec& H, double t,
                             const Point& p);

// Balls outside whose union the map is the identity; nullopt when no such
// bound is known (affine, Moebius, lifts). Empty list: identity everywhere.
std::optional<std::vector<SupportBall>> compact_support(const SympMap& g);

}  // namespace symplab
