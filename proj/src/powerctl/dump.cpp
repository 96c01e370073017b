// Copyright 2026 The PAOTA Simulator Authors
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

#include "paota/powerctl/dump.hpp"

#include <json.hpp>
#include <vector>

#include "paota/core/errors.hpp"

namespace paota {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::vector<double>> to_std(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return out;
}

}  // namespace

std::string dump_fqp(const FractionalQP& fqp, const DinkelbachResult* solution,
                     std::uint64_t round) {
  nlohmann::json j;
  j["round"] = round;
  j["clients"] = fqp.prov.ids;
  j["rho"] = to_std(fqp.prov.rho);
  j["theta"] = to_std(fqp.prov.theta);
  j["p_max"] = to_std(fqp.prov.p_max);
  j["L"] = fqp.prov.L;
  j["eps"] = fqp.prov.eps;
  j["K"] = fqp.prov.K;
  j["d"] = fqp.prov.d;
  j["noise_var"] = fqp.prov.noise_var;
  j["G"] = to_std(fqp.G);
  j["g"] = to_std(fqp.g);
  j["g0"] = fqp.g0;
  j["Q"] = to_std(fqp.Q);
  j["q"] = to_std(fqp.q);
  j["q0"] = fqp.q0;
  if (solution != nullptr) {
    nlohmann::json s;
    s["beta"] = to_std(solution->beta);
    s["objective"] = solution->objective;
    s["iterations"] = solution->trace.iterates.size();
    std::vector<double> lambdas;
    for (const auto& it : solution->trace.iterates) lambdas.push_back(it.lambda);
    s["lambda"] = lambdas;
    j["solution"] = s;
  }
  return j.dump();
}

FractionalQP load_fqp(const std::string& record) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(record);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("load_fqp: ") + e.what());
  }
  const auto rho = j.at("rho").get<std::vector<double>>();
  const auto theta = j.at("theta").get<std::vector<double>>();
  const auto p_max = j.at("p_max").get<std::vector<double>>();
  const std::vector<int> b(rho.size(), 1);
  FqpInputs in{rho, theta, p_max, b};
  in.L = j.at("L").get<double>();
  in.eps = j.at("eps").get<double>();
  in.K_active = j.at("K").get<double>();
  in.d = j.at("d").get<double>();
  in.noise_var = j.at("noise_var").get<double>();
  FractionalQP fqp = assemble_fqp(in);
  fqp.prov.ids = j.at("clients").get<std::vector<std::size_t>>();
  return fqp;
}

}  // namespace paota
