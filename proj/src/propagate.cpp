/*
 * Copyright 2026 The qwalk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qwalk/propagate.hpp"

namespace qwalk {

TransferMatrix transfer_matrix(const EigenSystem& es, double t) {
    const std::size_t n = es.size();
    std::vector<Complex> phase(n);
    for (std::size_t p = 0; p < n; ++p) phase[p] = std::polar(1.0, -es.eigenvalues[p] * t);

    TransferMatrix out{t, ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                acc += phase[p] * es.eigenvectors(j, p) * std::conj(es.eigenvectors(k, p));
            out.u(j, k) = acc;
        }
    }
    return out;
}

Permutation compose(const Permutation& p, long long n) {
    const Permutation step = n < 0 ? p.inverse() : p;
    const unsigned long long count = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
    Permutation out = Permutation::identity(p.size());
    for (unsigned long long i = 0; i < count; ++i) out = step.after(out);
    return out;
}

}  // namespace qwalk
