// Prints the density of 0 in M_n and in the three named sequences mod p
// for small primes, with a = b = 1.
//
//   density_table [max_prime]

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "motzkin/motzkin.hpp"

int main(int argc, char** argv) {
    using namespace motzkin;
    const std::uint64_t limit = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 60;

    std::cout << std::left << std::setw(6) << "p" << std::setw(16) << "motzkin" << std::setw(16) << "a005717"
              << std::setw(16) << "a005043" << std::setw(16) << "a005773" << "note\n";
    for (std::uint32_t q : odd_primes(limit)) {
        const Modulus p(q);
        const DensityReport m = density_zero_motzkin({1, 1}, p);
        std::cout << std::setw(6) << q << std::setw(16) << m.d0.to_string();
        for (SequenceId id : {SequenceId::A005717, SequenceId::A005043, SequenceId::A005773})
            std::cout << std::setw(16) << density_zero_named(id, p).d0.to_string();
        if (m.degenerate) std::cout << to_string(*m.degenerate);
        else if (m.lower_bound && m.d0 == *m.lower_bound) std::cout << "motzkin bound tight";
        std::cout << '\n';
    }
}
