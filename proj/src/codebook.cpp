#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lspstego/errors.hpp"
#include "lspstego/quantizer.hpp"
#include "lspstego/rng.hpp"

namespace lspstego {

SubCodebook::SubCodebook(int dim, std::vector<double> rows) : dim_(dim), rows_(std::move(rows)) {
  if (dim_ <= 0 || rows_.size() != static_cast<std::size_t>(dim_) * kCodebookSize) {
    throw ConfigError("sub-codebook of dimension " + std::to_string(dim_) + " needs " +
                      std::to_string(kCodebookSize) + " entries, got " +
                      std::to_string(dim_ > 0 ? rows_.size() / dim_ : 0));
  }
  planes_.resize(rows_.size());
  for (int l = 0; l < kCodebookSize; ++l)
    for (int d = 0; d < dim_; ++d) planes_[d * kCodebookSize + l] = rows_[l * dim_ + d];
}

Codebook::Codebook(std::array<SubCodebook, kSubVectors> subs) : subs_(std::move(subs)) {
  for (int m = 0; m < kSubVectors; ++m) {
    if (subs_[m].dim() != kSubDims[m]) {
      throw ConfigError("sub-codebook " + std::to_string(m) + " has dimension " +
                        std::to_string(subs_[m].dim()) + ", expected " +
                        std::to_string(kSubDims[m]));
    }
  }
}

Codebook make_synthetic_codebook(std::uint64_t seed, const SyntheticCodebookOptions& opts) {
  Rng rng(seed);
  const double span = opts.hi - opts.lo;
  const double mid = 0.5 * (opts.lo + opts.hi);
  std::array<SubCodebook, kSubVectors> subs;
  for (int m = 0; m < kSubVectors; ++m) {
    const int dim = kSubDims[m];
    std::vector<double> first(kCodebookSize);
    for (double& v : first) v = rng.uniform(opts.lo, opts.hi);
    std::sort(first.begin(), first.end());

    std::vector<double> rows(static_cast<std::size_t>(dim) * kCodebookSize);
    for (int d = 1; d < dim; ++d) {
      const double cycles = 1.0 + static_cast<double>(rng.below(3));
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double amp = rng.uniform(0.3, 0.45) * span;
      for (int l = 0; l < kCodebookSize; ++l) {
        const double t = 2.0 * std::numbers::pi * cycles * l / kCodebookSize + phase;
        const double jitter = 0.01 * span * (rng.uniform() - 0.5);
        rows[l * dim + d] = std::clamp(mid + amp * std::sin(t) + jitter, opts.lo, opts.hi);
      }
    }
    for (int l = 0; l < kCodebookSize; ++l) rows[l * dim] = first[l];
    subs[m] = SubCodebook(dim, std::move(rows));
  }
  return Codebook(std::move(subs));
}

QuantConfig load_quant_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  QuantConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::replace(value.begin(), value.end(), ',', ' ');
    std::istringstream vs(value);
    if (key == "predictor") {
      if (!(vs >> cfg.predictor)) throw ConfigError("predictor: not a number");
    } else if (key == "p_dc") {
      LspVector dc;
      for (int i = 0; i < kLpcOrder; ++i)
        if (!(vs >> dc[i])) throw ConfigError("p_dc: expected 10 values");
      std::string extra;
      if (vs >> extra) throw ConfigError("p_dc: expected 10 values");
      if (!is_valid_lsp(dc)) throw ConfigError("p_dc: not strictly increasing in (0, pi)");
      cfg.dc = dc;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace lspstego
