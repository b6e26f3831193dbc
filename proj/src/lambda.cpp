#include "lamsim/lambda.hpp"

#include <cmath>

#include "lamsim/errors.hpp"
#include "lamsim/response.hpp"

namespace lamsim {

namespace {

constexpr int kG = 0, kM = 1, kE = 2;

void validate(const LambdaParams& p) {
    if (p.gamma_eg < 0.0 || p.gamma_em < 0.0)
        fail("InvalidParams", "lambda rates must be nonnegative");
    if (!(p.gamma_mg > 0.0))
        fail("InvalidParams", "gamma_mg must be positive so |g> is stationary");
}

ComplexMatrix transition(int to, int from) {
    ComplexMatrix op = ComplexMatrix::Zero(3, 3);
    op(to, from) = 1.0;
    return op;
}

}  // namespace

LindbladModel build_lambda_model(const LambdaParams& p, bool include_probe) {
    validate(p);

    LindbladModel model;
    model.frame = Frame::DressedSecular;
    model.dim = 3;
    model.h_eff = ComplexMatrix::Zero(3, 3);
    model.port1 = std::sqrt(p.gamma_eg) * transition(kG, kE);

    if (include_probe) {
        model.h_eff(kE, kE) = -p.probe_detuning;
        const Complex t = std::sqrt(p.gamma_eg) * p.probe_amp;
        model.h_eff(kE, kG) += t;
        model.h_eff(kG, kE) += std::conj(t);
        model.probe_amp = p.probe_amp;
        model.probe_detuning = p.probe_detuning;
    }

    const auto add = [&](double rate, int from, int to, int waveguide) {
        if (!(rate > 0.0)) return;
        CollapseChannel c;
        c.op = std::sqrt(rate) * transition(to, from);
        c.opdag_op = c.op.adjoint() * c.op;
        c.waveguide = waveguide;
        c.from = from;
        c.to = to;
        model.channels.push_back(std::move(c));
    };
    add(p.gamma_eg, kE, kG, 1);
    add(p.gamma_em, kE, kM, 1);
    add(p.gamma_mg, kM, kG, 1);
    return model;
}

Complex lambda_reflection(const LambdaParams& p) {
    const LindbladModel model = build_lambda_model(p, false);
    const SteadyState ss = steady_state(model);
    const ComplexMatrix sup = superoperator_matrix(model);
    return resolvent_reflection(sup, ss.rho, model.port1, p.probe_detuning);
}

double lambda_efficiency(const LambdaParams& p) {
    validate(p);
    if (!(std::norm(p.probe_amp) > 0.0))
        fail("InvalidParams", "lambda efficiency needs a nonzero probe");
    if (p.gamma_em == 0.0) return 0.0;

    const LindbladModel model = build_lambda_model(p, true);
    const SteadyState ss = steady_state(model);

    const ComplexMatrix em = std::sqrt(p.gamma_em) * transition(kM, kE);
    const double total = ((em.adjoint() * em) * ss.rho).trace().real();
    const double coherent = std::norm((em * ss.rho).trace());
    return (total - coherent) / std::norm(p.probe_amp);
}

}  // namespace lamsim
