// lspstego: hide data in the LSP quantization indices of 8 kHz speech.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lspstego/corpus.hpp"
#include "lspstego/errors.hpp"
#include "lspstego/kernels.hpp"
#include "lspstego/magic_matrix.hpp"
#include "lspstego/metrics.hpp"
#include "lspstego/pipeline.hpp"
#include "lspstego/rng.hpp"
#include "lspstego/speech_io.hpp"
#include "lspstego/stego_engine.hpp"

namespace fs = std::filesystem;
using namespace lspstego;

namespace {

struct KeyOptions {
  std::optional<std::uint64_t> seed;
  std::string matrix_path;
  std::string codebook_path;
  std::string config_path;
  std::string scheme = "magic3d";
};

void add_key_options(CLI::App* cmd, KeyOptions& k, bool with_codebook) {
  cmd->add_option("--seed", k.seed, "Shared stego key; generates the matrix");
  cmd->add_option("--matrix", k.matrix_path, "M3DM matrix file (instead of --seed)")->check(CLI::ExistingFile);
  cmd->add_option("--scheme", k.scheme, "magic3d | lsb2 | parity_qim")
      ->check(CLI::IsMember({"magic3d", "lsb2", "parity_qim"}));
  if (with_codebook) {
    cmd->add_option("--codebook", k.codebook_path, "LSPC codebook (default: built-in synthetic)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--config", k.config_path, "Quantizer config (p_dc, predictor)")->check(CLI::ExistingFile);
  }
}

MagicMatrix resolve_matrix(const KeyOptions& k, bool required) {
  if (!k.matrix_path.empty()) return read_matrix(fs::path(k.matrix_path));
  if (k.seed) return MagicMatrix::generate(*k.seed);
  if (required) throw CLI::ValidationError("--seed or --matrix is required");
  return MagicMatrix::generate(0);
}

Codebook resolve_codebook(const KeyOptions& k) {
  if (!k.codebook_path.empty()) return read_codebook(fs::path(k.codebook_path));
  return make_synthetic_codebook(kDefaultCodebookSeed);
}

QuantConfig resolve_config(const KeyOptions& k) {
  if (!k.config_path.empty()) return load_quant_config(k.config_path);
  return {};
}

void print_report(const ValidationReport& r) {
  std::printf("%d/%d constraints satisfied\n", r.satisfied(), ValidationReport::kConstraintCount);
  for (const auto& v : r.violations) std::printf("  violated: %s\n", v.describe().c_str());
}

int cmd_gen_matrix(std::uint64_t seed, const std::string& out) {
  const auto m = MagicMatrix::generate(seed);
  const auto report = validate(m);
  print_report(report);
  if (!report.ok()) return 2;
  write_matrix(m, fs::path(out));
  std::printf("wrote %s (seed %llu)\n", out.c_str(), static_cast<unsigned long long>(seed));
  return 0;
}

int cmd_validate_matrix(const std::string& path) {
  const auto m = read_matrix(fs::path(path), false);
  const auto report = validate(m);
  print_report(report);
  return report.ok() ? 0 : 1;
}

void print_capacity_table() {
  std::printf("%-12s %10s %10s\n", "scheme", "bits/frame", "bit/s");
  for (Scheme s : {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim})
    std::printf("%-12s %10d %10.0f\n", std::string(scheme_name(s)).c_str(), bits_per_frame(s), capacity_bps(s));
}

int cmd_embed(const KeyOptions& k, const std::string& cover, const std::string& secret,
              const std::string& out, const std::string& stego_wav) {
  const Scheme scheme = parse_scheme(k.scheme);
  const auto matrix = resolve_matrix(k, scheme == Scheme::kMagic3d);
  const auto codebook = resolve_codebook(k);
  const auto cfg = resolve_config(k);

  const auto clip = read_wav(fs::path(cover));
  const auto frames = frame_split(clip);
  const auto payload = read_bytes(secret);
  const auto lsps = analyze_frames(frames);
  std::size_t embeddable = frames.size();
  if (!frames.empty() && frames.back().padded) --embeddable;

  EmbedResult res;
  try {
    res = embed_stream(scheme, lsps, payload, matrix, codebook, cfg, embeddable);
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "lspstego: capacity exceeded: %s\n", e.what());
    return 3;
  }
  write_lspi(res.indices, fs::path(out));

  const auto clean = run_scheme(Scheme::kNone, lsps, {}, matrix, codebook, cfg);
  std::vector<LspVector> clean_lsp, stego_lsp;
  double sq_sum = 0.0;
  std::size_t carried = 0;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    clean_lsp.push_back(clean[f].decoded);
    stego_lsp.push_back(res.frames[f].decoded);
    if (res.frames[f].symbol >= 0) {
      sq_sum += res.frames[f].sq_distance;
      ++carried;
    }
  }
  const auto clean_sig = resynthesize(frames, clean_lsp);
  const auto stego_sig = resynthesize(frames, stego_lsp);

  const std::size_t bits_used = carried * static_cast<std::size_t>(bits_per_frame(scheme));
  std::printf("scheme: %s (%s kernels)\n", std::string(scheme_name(scheme)).c_str(),
              std::string(kernels::isa_name(kernels::active_isa())).c_str());
  std::printf("frames: %zu (embeddable %zu), payload %zu bytes\n", frames.size(), embeddable, payload.size());
  std::printf("capacity used: %zu of %zu bits (%zu frames incl. header)\n", bits_used,
              embeddable * static_cast<std::size_t>(bits_per_frame(scheme)), carried);
  std::printf("mean sq_distance: %.4f\n", carried ? sq_sum / static_cast<double>(carried) : 0.0);
  const bool silent = std::all_of(clean_sig.begin(), clean_sig.end(), [](double v) { return v == 0.0; });
  if (silent) {
    std::printf("SNR: n/a (silent cover)\n");
  } else {
    std::printf("SNR (clean vs stego resynthesis): %.3f dB\n", snr_db(clean_sig, stego_sig));
  }

  if (!stego_wav.empty()) {
    WavClip wav;
    wav.samples.reserve(stego_sig.size());
    for (double v : stego_sig)
      wav.samples.push_back(static_cast<std::int16_t>(std::lround(std::clamp(v, -32768.0, 32767.0))));
    wav.samples.resize(clip.samples.size());
    write_wav(wav, fs::path(stego_wav));
  }
  return 0;
}

int cmd_extract(const KeyOptions& k, const std::string& in, const std::string& out) {
  const Scheme scheme = parse_scheme(k.scheme);
  const auto matrix = resolve_matrix(k, scheme == Scheme::kMagic3d);
  const auto stream = read_lspi(fs::path(in));
  std::vector<std::uint8_t> payload;
  try {
    payload = extract_stream(stream, scheme, matrix);
  } catch (const TruncationError& e) {
    std::fprintf(stderr, "lspstego: integrity error: %s\n", e.what());
    return 4;
  }
  write_bytes(payload, fs::path(out));
  std::printf("recovered %zu bytes from %zu frames\n", payload.size(), stream.size());
  return 0;
}

int cmd_analyze(const KeyOptions& k, const std::string& cover, const std::string& secret,
                const std::string& csv, const std::string& plot_dir, std::size_t utterances,
                std::size_t frames_per_utt) {
  CompareConfig cfg{resolve_matrix(k, false), resolve_codebook(k), resolve_config(k)};

  std::vector<std::vector<SpeechFrame>> corpus;
  if (!cover.empty()) {
    corpus.push_back(frame_split(read_wav(fs::path(cover))));
  } else {
    CorpusOptions opts;
    opts.utterances = utterances;
    opts.frames_per_utterance = frames_per_utt;
    corpus = synthetic_corpus(opts);
  }

  std::vector<std::uint8_t> payload;
  if (!secret.empty()) {
    payload = read_bytes(secret);
  } else {
    Rng rng(k.seed.value_or(0) ^ 0x5EC2E7ULL);
    payload.resize(4096);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next() >> 56);
  }

  std::vector<SchemeReport> rows;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const auto r = compare_schemes(corpus[u], payload, cfg, u);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const auto means = aggregate(rows);

  if (!csv.empty()) {
    std::ofstream f(csv);
    write_csv(f, rows);
    if (!f) throw std::runtime_error("cannot write " + csv);
  }
  if (!plot_dir.empty()) {
    fs::create_directories(plot_dir);
    std::ofstream hist(fs::path(plot_dir) / "displacement_histogram.dat");
    write_histogram_data(hist, means);
    const double rates[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<RatePoint> points;
    for (const auto& utt : corpus) {
      const auto p = snr_rate_curve(utt, payload, rates, cfg);
      points.insert(points.end(), p.begin(), p.end());
    }
    // Average across utterances per (scheme, rate).
    std::vector<RatePoint> avg;
    for (const auto& p : points) {
      auto it = std::find_if(avg.begin(), avg.end(), [&](const RatePoint& a) {
        return a.scheme == p.scheme && a.embedding_rate == p.embedding_rate;
      });
      if (it == avg.end()) {
        avg.push_back(p);
      } else {
        it->snr_db += p.snr_db;
      }
    }
    for (auto& a : avg) a.snr_db /= static_cast<double>(corpus.size());
    std::ofstream curve(fs::path(plot_dir) / "snr_vs_rate.dat");
    write_rate_curve(curve, avg);
  }

  print_capacity_table();
  std::printf("\n%zu utterance(s), corpus means:\n", corpus.size());
  std::printf("%-12s %12s %14s %14s %12s\n", "scheme", "SNR dB", "wErr clean", "wErr stego", "increase");
  for (const auto& r : means) {
    const auto& q = r.quality;
    std::printf("%-12s %12.3f %14.6f %14.6f %11.3f%%\n", std::string(scheme_name(r.scheme)).c_str(),
                q.snr_db, q.mean_weighted_error_clean, q.mean_weighted_error_stego,
                100.0 * q.relative_error_increase);
  }
  return 0;
}

int cmd_capacity(std::optional<std::size_t> frames, std::optional<std::size_t> bytes) {
  print_capacity_table();
  if (frames) {
    std::printf("\ncover of %zu frames (%.2f s):\n", *frames, static_cast<double>(*frames) * kFrameSeconds);
    for (Scheme s : {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim}) {
      const std::size_t header = frames_required(0, s);
      const std::size_t body = *frames > header ? *frames - header : 0;
      std::printf("  %-12s max payload %zu bytes\n", std::string(scheme_name(s)).c_str(),
                  body * static_cast<std::size_t>(bits_per_frame(s)) / 8);
    }
  }
  if (bytes) {
    std::printf("\npayload of %zu bytes needs:\n", *bytes);
    for (Scheme s : {Scheme::kMagic3d, Scheme::kLsb2, Scheme::kParityQim})
      std::printf("  %-12s %zu frames\n", std::string(scheme_name(s)).c_str(), frames_required(*bytes, s));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech steganography in LSP quantization indices"};
  app.require_subcommand(1);

  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-matrix", "Generate and validate a 3D-Magic matrix");
  gen->add_option("--seed", gen_seed, "Generation key")->required();
  gen->add_option("--out", gen_out, "Output M3DM file")->required();

  std::string val_path;
  auto* val = app.add_subcommand("validate-matrix", "Check the permutation constraints of an M3DM file");
  val->add_option("matrix,--matrix", val_path, "M3DM file")->required()->check(CLI::ExistingFile);

  KeyOptions emb_key;
  std::string emb_cover, emb_secret, emb_out, emb_wav;
  auto* emb = app.add_subcommand("embed", "Hide a file in the LSP indices of a cover WAV");
  emb->add_option("--cover", emb_cover, "8 kHz mono 16-bit WAV")->required()->check(CLI::ExistingFile);
  emb->add_option("--secret", emb_secret, "Payload file")->required()->check(CLI::ExistingFile);
  emb->add_option("--out", emb_out, "Output LSPI stream")->required();
  emb->add_option("--stego-wav", emb_wav, "Also write the resynthesized stego speech");
  add_key_options(emb, emb_key, true);

  KeyOptions ext_key;
  std::string ext_in, ext_out;
  auto* ext = app.add_subcommand("extract", "Recover a payload from an LSPI stream");
  ext->add_option("--in", ext_in, "LSPI stream")->required()->check(CLI::ExistingFile);
  ext->add_option("--out", ext_out, "Recovered payload file")->required();
  add_key_options(ext, ext_key, false);

  KeyOptions ana_key;
  std::string ana_cover, ana_secret, ana_csv, ana_plot;
  std::size_t ana_utts = 20, ana_frames = 100;
  auto* ana = app.add_subcommand("analyze", "Compare magic3d with the lsb2 and parity_qim baselines");
  ana->add_option("--cover", ana_cover, "Cover WAV (default: synthetic corpus)")->check(CLI::ExistingFile);
  ana->add_option("--secret", ana_secret, "Payload (default: 4 KiB pseudo-random)")->check(CLI::ExistingFile);
  ana->add_option("--csv", ana_csv, "Per-utterance CSV report");
  ana->add_option("--plot-dir", ana_plot, "Directory for gnuplot data files");
  ana->add_option("--utterances", ana_utts, "Synthetic corpus size")->check(CLI::PositiveNumber);
  ana->add_option("--frames", ana_frames, "Frames per synthetic utterance")->check(CLI::PositiveNumber);
  add_key_options(ana, ana_key, true);

  std::optional<std::size_t> cap_frames, cap_bytes;
  auto* cap = app.add_subcommand("capacity", "Print hidden capacity per scheme");
  cap->add_option("--frames", cap_frames, "Cover length in frames");
  cap->add_option("--bytes", cap_bytes, "Payload size in bytes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen_matrix(gen_seed, gen_out);
    if (*val) return cmd_validate_matrix(val_path);
    if (*emb) return cmd_embed(emb_key, emb_cover, emb_secret, emb_out, emb_wav);
    if (*ext) return cmd_extract(ext_key, ext_in, ext_out);
    if (*ana) return cmd_analyze(ana_key, ana_cover, ana_secret, ana_csv, ana_plot, ana_utts, ana_frames);
    if (*cap) return cmd_capacity(cap_frames, cap_bytes);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lspstego: %s\n", e.what());
    return 1;
  }
  return 1;
}
