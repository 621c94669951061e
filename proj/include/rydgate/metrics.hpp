// Copyright 2026 The rydgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <string>

#include "rydgate/qcore.hpp"

namespace rydgate {

// Rows are inputs, columns outputs: P(out | in).
using TruthTable = Eigen::MatrixXd;

// Throws unless rho is Hermitian with unit trace and no eigenvalue below
// -1e-8.
void check_density(const Mat& rho, const char* who);

// Tr^2 sqrt(sqrt(rho_id) rho sqrt(rho_id)).
double state_fidelity(const Mat& rho, const Mat& rho_id);
// 1 - Tr|rho - rho_id| / 2.
double trace_distance_fidelity(const Mat& rho, const Mat& rho_id);
Mat pure_density(const Vec& psi);

// Square root of a positive semidefinite matrix, eigenvalues clipped at
// -1e-12 and then at zero.
Mat psd_sqrt(const Mat& a);

// Row k holds |<j|M|k>|^2 for the map M (computational columns).
TruthTable truth_table(const Mat& map);
// Tr(U^T P) / d for probability tables (row convention on both sides).
double truth_table_fidelity(const TruthTable& realized,
                            const TruthTable& ideal);

// [|Tr(U^+ M)|^2 + Tr(U^+ M M^+ U)] / (N (N + 1)).
double pedersen_fidelity(const Mat& realized, const Mat& ideal);

// Two-qubit diagonal ideal times diag(1, e^{ia}, e^{ib}, e^{i(a+b)}), with a
// and b read off the realized |01>, |10> phases relative to |00>. Scores a
// gate "up to single-qubit Z rotations".
Mat align_local_z(const Mat& realized, const Mat& ideal);

// Superoperator given as a function on operators.
using Channel = std::function<Mat(const Mat&)>;
// Average fidelity over the Pauli-product basis on n_qubits qubits. Throws
// when the channel increases the trace of a density matrix.
double nielsen_fidelity(const Channel& channel, const Mat& ideal, int n_qubits);
Channel unitary_channel(const Mat& u);

// "phi+", "phi-", "psi+", "psi-".
Vec bell_state(const std::string& label);
double bell_fidelity(const Vec& psi, const std::string& label);
double bell_fidelity(const Mat& rho, const std::string& label);

}  // namespace rydgate
