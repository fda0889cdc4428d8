#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lspstego/corpus.hpp"
#include "lspstego/errors.hpp"
#include "lspstego/metrics.hpp"
#include "lspstego/pipeline.hpp"
#include "lspstego/rng.hpp"

using namespace lspstego;

namespace {

std::vector<std::uint8_t> random_bytes(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.below(256));
  return out;
}

const SchemeReport& row_for(const std::vector<SchemeReport>& rows, Scheme s) {
  for (const auto& r : rows)
    if (r.scheme == s) return r;
  throw std::runtime_error("missing scheme");
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("SNR hand values") {
    const std::vector<double> ref = {2, 2, 2, 2}, test = {2, 2, 2, 0};
    CHECK(snr_db(ref, test) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
    CHECK(snr_db(ref, test) == doctest::Approx(6.0206).epsilon(1e-5));
    CHECK(snr_db(ref, ref) == kSnrCapDb);
    // Noise with the same power as the signal.
    const std::vector<double> a = {1, -2, 3, 0.5}, b = {2, -4, 6, 1};
    CHECK(std::abs(snr_db(a, b)) < 1e-9);
  }

  TEST_CASE("SNR error cases") {
    const std::vector<double> a = {1, 2, 3}, b = {1, 2}, z = {0, 0, 0}, e;
    CHECK_THROWS_AS(snr_db(a, b), DomainError);
    CHECK_THROWS_AS(snr_db(e, e), DomainError);
    CHECK_THROWS_AS(snr_db(z, a), DomainError);
  }

  TEST_CASE("SNR is unchanged by a common scale factor") {
    Rng rng(1);
    std::vector<double> ref(500), test(500);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ref[i] = rng.normal();
      test[i] = ref[i] + 0.1 * rng.normal();
    }
    const double base = snr_db(ref, test);
    for (double c : {-3.0, 0.001, 250.0}) {
      std::vector<double> r2(ref), t2(test);
      for (auto& v : r2) v *= c;
      for (auto& v : t2) v *= c;
      CHECK(snr_db(r2, t2) == doctest::Approx(base).epsilon(1e-9));
    }
  }

  TEST_CASE("resynthesis with the unquantized LSPs reproduces the input") {
    const auto utt = synthetic_corpus({.seed = 2, .utterances = 1, .frames_per_utterance = 60}).front();
    std::vector<LspVector> lsps;
    for (const auto& f : utt) lsps.push_back(lpc_to_lsp(lpc_analyze(f)));
    const auto out = resynthesize(utt, lsps);
    double se = 0.0;
    for (std::size_t f = 0; f < utt.size(); ++f)
      for (std::size_t n = 0; n < kFrameSamples; ++n) {
        const double d = out[f * kFrameSamples + n] - utt[f].samples[n];
        se += d * d;
      }
    CHECK(std::sqrt(se / static_cast<double>(out.size())) < 1e-6);
  }

  TEST_CASE("resynthesis of silence is silence") {
    const std::vector<SpeechFrame> frames(5);
    const std::vector<LspVector> lsps(5, uniform_lsp());
    for (double v : resynthesize(frames, lsps)) CHECK(v == 0.0);
  }

  TEST_CASE("resynthesis input checks") {
    const std::vector<SpeechFrame> frames(3);
    const std::vector<LspVector> two(2, uniform_lsp());
    CHECK_THROWS_AS(resynthesize(frames, two), DomainError);
    std::vector<LspVector> bad(3, uniform_lsp());
    bad[1][3] = bad[1][2];
    CHECK_THROWS_AS(resynthesize(frames, bad), DomainError);
  }

  TEST_CASE("scheme comparison on one utterance") {
    const CompareConfig cfg;
    const auto utt = synthetic_corpus({.seed = 3, .utterances = 1, .frames_per_utterance = 100}).front();
    const auto payload = random_bytes(4, 4096);
    const auto rows = compare_schemes(utt, payload, cfg, 7);
    REQUIRE(rows.size() == 4);

    const auto& none = row_for(rows, Scheme::kNone).quality;
    CHECK(none.relative_error_increase == 0.0);
    CHECK(none.snr_db == kSnrCapDb);
    CHECK(none.mean_weighted_error_clean == none.mean_weighted_error_stego);
    CHECK(none.embedded_frames == 0);

    CHECK(row_for(rows, Scheme::kMagic3d).quality.capacity_bps == doctest::Approx(200.0));
    CHECK(row_for(rows, Scheme::kLsb2).quality.capacity_bps == doctest::Approx(200.0));
    CHECK(row_for(rows, Scheme::kParityQim).quality.capacity_bps == doctest::Approx(100.0));

    for (const auto& r : rows) {
      CHECK(r.utterance == 7);
      const auto& q = r.quality;
      CHECK(std::accumulate(q.displacement_histogram.begin(), q.displacement_histogram.end(), std::size_t{0}) ==
            q.embedded_frames);
      if (r.scheme == Scheme::kNone) continue;
      CHECK(q.embedded_frames == 100);
      CHECK(q.embedded_bits == 100u * static_cast<std::size_t>(bits_per_frame(r.scheme)));
      CHECK(std::isfinite(q.snr_db));
      CHECK(q.snr_db > 0.0);
    }
    const auto& magic = row_for(rows, Scheme::kMagic3d).quality;
    for (std::size_t b = 28; b < kHistogramBuckets; ++b) CHECK(magic.displacement_histogram[b] == 0);
  }

  TEST_CASE("zero-displacement bucket counts frames whose best index already carried the key") {
    const CompareConfig cfg;
    const auto utt = synthetic_corpus({.seed = 5, .utterances = 1, .frames_per_utterance = 100}).front();
    const auto lsps = analyze_frames(utt);
    std::vector<int> symbols(lsps.size());
    Rng rng(6);
    for (int& s : symbols) s = static_cast<int>(rng.below(64));
    const auto q = evaluate_scheme(Scheme::kMagic3d, utt, lsps, symbols, cfg);
    std::size_t already = 0;
    for (const auto& fo : run_scheme(Scheme::kMagic3d, lsps, symbols, cfg.matrix, cfg.codebook, cfg.quant))
      if (cfg.matrix.expand(to_coord(fo.best)) == fo.symbol) ++already;
    CHECK(q.displacement_histogram[0] == already);
  }

  TEST_CASE("payload shorter than capacity only touches a prefix") {
    const CompareConfig cfg;
    const auto utt = synthetic_corpus({.seed = 8, .utterances = 1, .frames_per_utterance = 50}).front();
    const auto rows = compare_schemes(utt, random_bytes(9, 3), cfg);
    CHECK(row_for(rows, Scheme::kMagic3d).quality.embedded_frames == 4);
    CHECK(row_for(rows, Scheme::kMagic3d).quality.embedded_bits == 24);
    CHECK(row_for(rows, Scheme::kParityQim).quality.embedded_frames == 8);
  }

  TEST_CASE("padded frames never carry payload and an empty cover cannot hold data") {
    const CompareConfig cfg;
    auto utt = synthetic_corpus({.seed = 10, .utterances = 1, .frames_per_utterance = 20}).front();
    utt.back().padded = true;
    const auto rows = compare_schemes(utt, random_bytes(11, 4096), cfg);
    CHECK(row_for(rows, Scheme::kMagic3d).quality.embedded_frames == 19);
    CHECK_THROWS_AS(compare_schemes({}, random_bytes(12, 10), cfg), CapacityError);
    CHECK_NOTHROW(compare_schemes({}, {}, cfg));
  }

  TEST_CASE("CSV output and aggregation") {
    const CompareConfig cfg;
    const auto corpus = synthetic_corpus({.seed = 13, .utterances = 3, .frames_per_utterance = 40});
    const auto payload = random_bytes(14, 4096);
    std::vector<SchemeReport> rows;
    for (std::size_t u = 0; u < corpus.size(); ++u)
      for (const auto& r : compare_schemes(corpus[u], payload, cfg, u)) rows.push_back(r);

    std::ostringstream csv;
    write_csv(csv, rows);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(n == 12);

    const auto means = aggregate(rows);
    REQUIRE(means.size() == 4);
    double snr = 0.0;
    for (const auto& r : rows)
      if (r.scheme == Scheme::kLsb2) snr += r.quality.snr_db;
    CHECK(row_for(means, Scheme::kLsb2).quality.snr_db == doctest::Approx(snr / 3.0));
    CHECK(row_for(means, Scheme::kNone).quality.snr_db == kSnrCapDb);
    CHECK(row_for(means, Scheme::kMagic3d).quality.embedded_frames == 120);

    std::ostringstream hist;
    write_histogram_data(hist, means);
    const std::string text = hist.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(kHistogramBuckets));
    CHECK(text.find(">27") != std::string::npos);
  }

  TEST_CASE("SNR falls as the embedding rate rises") {
    const CompareConfig cfg;
    const auto utt = synthetic_corpus({.seed = 15, .utterances = 1, .frames_per_utterance = 100}).front();
    const std::vector<double> rates = {0.0, 0.5, 1.0};
    const auto pts = snr_rate_curve(utt, random_bytes(16, 4096), rates, cfg);
    REQUIRE(pts.size() == 9);
    for (std::size_t s = 0; s < 3; ++s) {
      CHECK(pts[3 * s].snr_db == kSnrCapDb);
      CHECK(pts[3 * s + 2].snr_db < pts[3 * s + 1].snr_db + 1e-9);
    }
    std::ostringstream out;
    write_rate_curve(out, pts);
    CHECK(out.str().find("0.5 ") != std::string::npos);
  }
}
