#include "vmt19937/jump.hpp"

#include <bit>
#include <stdexcept>

namespace vmt19937 {

void JumpSpec::validate() const {
    if (lanes < 1 || !std::has_single_bit(lanes))
        throw std::invalid_argument("lanes must be a power of two");
}

unsigned JumpSpec::full_period_exponent(unsigned lanes) {
    return unsigned(kEffectiveBits) - unsigned(std::bit_width(lanes) - 1);
}

bool JumpSpec::is_full_period_split() const {
    return exponent == full_period_exponent(lanes);
}

JumpSpec JumpSpec::full_period_split(unsigned lanes) {
    JumpSpec s{full_period_exponent(lanes), lanes};
    s.validate();
    return s;
}

Mt19937 jump_state(const Mt19937& state, const F2Matrix& jump_matrix) {
    if (jump_matrix.dim() != kEffectiveBits)
        throw std::invalid_argument("jump matrix dimension mismatch");
    if (state.cursor() != Mt19937::state_len)
        throw std::logic_error("jump requires the pre-regeneration boundary");
    return effective_to_state(vec_mat_mul(state_to_effective(state), jump_matrix));
}

std::vector<Mt19937> make_dephased_states(const Mt19937& x0, const JumpSpec& spec,
                                          const F2Matrix& jump_matrix) {
    spec.validate();
    if (x0.cursor() != Mt19937::state_len)
        throw std::logic_error("de-phasing requires the pre-regeneration boundary");
    std::vector<Mt19937> lanes;
    lanes.reserve(spec.lanes);
    lanes.push_back(x0);
    if (spec.lanes == 1)
        return lanes;
    if (jump_matrix.dim() != kEffectiveBits)
        throw std::invalid_argument("jump matrix dimension mismatch");
    F2Vector v = state_to_effective(x0);
    for (unsigned t = 1; t < spec.lanes; ++t) {
        v = vec_mat_mul(v, jump_matrix);
        lanes.push_back(effective_to_state(v));
    }
    return lanes;
}

} // namespace vmt19937
