#pragma once

#include <vector>

#include "vmt19937/f2_matrix.hpp"
#include "vmt19937/mt19937.hpp"

namespace vmt19937 {

// Stream-splitting parameters: M lanes, each de-phased from the previous
// by 2^exponent steps. Full-period splitting uses
// exponent == 19937 - log2(lanes); smaller exponents are for testing.
struct JumpSpec {
    unsigned exponent; // jump length is 2^exponent
    unsigned lanes;    // power of two, >= 1

    void validate() const;
    bool is_full_period_split() const;
    static JumpSpec full_period_split(unsigned lanes);
    static unsigned full_period_exponent(unsigned lanes);
};

// Advances a generator by 2^q steps, where jump_matrix holds the one-step
// transition matrix raised to the 2^q-th power: the result's output stream
// equals the input's with the first 2^q values skipped. Defined only at
// the pre-regeneration boundary (cursor == state_len, where seeding leaves
// the state); mid-block jumps are rejected.
Mt19937 jump_state(const Mt19937& state, const F2Matrix& jump_matrix);

// [x0, x0*B, x0*B^2, ..., x0*B^(lanes-1)] by successive vector-matrix
// products; lane t's stream starts 2^exponent * t values into x0's stream.
std::vector<Mt19937> make_dephased_states(const Mt19937& x0, const JumpSpec& spec,
                                          const F2Matrix& jump_matrix);

} // namespace vmt19937
