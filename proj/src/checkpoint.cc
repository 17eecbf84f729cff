//
// Copyright 2026 The TokenAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tokenaudit/checkpoint.h"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tokenaudit {
namespace {

constexpr char kMagic[8] = {'T', 'A', 'M', 'O', 'D', 'E', 'L', '1'};
constexpr std::uint32_t kKindHs = 1;
constexpr std::uint32_t kKindSie = 2;

void write_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), b.size());
}

void write_u64(std::ostream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b.data()), b.size());
}

std::uint32_t read_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double v = m(r, c);
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      write_u64(out, bits);
    }
  }
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double x = v(i);
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    write_u64(out, bits);
  }
}

void read_matrix(std::istream& in, Eigen::MatrixXd* m) {
  for (Eigen::Index r = 0; r < m->rows(); ++r) {
    for (Eigen::Index c = 0; c < m->cols(); ++c) {
      std::uint64_t bits = read_u64(in);
      double v;
      std::memcpy(&v, &bits, sizeof(v));
      (*m)(r, c) = v;
    }
  }
}

void read_vector(std::istream& in, Eigen::VectorXd* v) {
  for (Eigen::Index i = 0; i < v->size(); ++i) {
    std::uint64_t bits = read_u64(in);
    double x;
    std::memcpy(&x, &bits, sizeof(x));
    (*v)(i) = x;
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open checkpoint file for writing: " + path);
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint file: " + path);
  return in;
}

void check_header(std::istream& in, std::uint32_t expected_kind,
                  std::uint64_t expected_vocab_hash) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a model checkpoint");
  }
  std::uint32_t kind = read_u32(in);
  if (kind != expected_kind) {
    throw std::runtime_error("checkpoint holds a different model kind");
  }
  std::uint64_t vocab_hash = read_u64(in);
  if (vocab_hash != expected_vocab_hash) {
    throw std::runtime_error("checkpoint vocabulary hash mismatch");
  }
}

}  // namespace

void save_hs_checkpoint(const std::string& path, const HsModel& model,
                        std::uint64_t vocab_hash) {
  std::ofstream out = open_out(path);
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kKindHs);
  write_u64(out, vocab_hash);
  write_u32(out, static_cast<std::uint32_t>(model.vocab_size()));
  write_u32(out, static_cast<std::uint32_t>(model.dim()));
  write_u32(out, static_cast<std::uint32_t>(model.hidden()));
  write_matrix(out, model.embeddings);
  write_matrix(out, model.w1);
  write_vector(out, model.b1);
  write_matrix(out, model.w2);
  write_vector(out, model.b2);
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

void save_sie_checkpoint(const std::string& path, const SieModel& model,
                         std::uint64_t vocab_hash) {
  std::ofstream out = open_out(path);
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kKindSie);
  write_u64(out, vocab_hash);
  write_u32(out, static_cast<std::uint32_t>(model.vocab_size()));
  write_u32(out, static_cast<std::uint32_t>(model.dim()));
  write_u32(out, static_cast<std::uint32_t>(model.hidden()));
  write_matrix(out, model.embeddings);
  write_matrix(out, model.w1);
  write_vector(out, model.b1);
  write_matrix(out, model.w2);
  write_vector(out, model.b2);
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

HsModel load_hs_checkpoint(const std::string& path,
                           std::uint64_t expected_vocab_hash) {
  std::ifstream in = open_in(path);
  check_header(in, kKindHs, expected_vocab_hash);
  std::uint32_t vocab = read_u32(in);
  std::uint32_t dim = read_u32(in);
  std::uint32_t hidden = read_u32(in);
  if (!in || vocab == 0 || dim == 0 || hidden == 0) {
    throw std::runtime_error("malformed checkpoint header");
  }
  HsModel model;
  model.embeddings.resize(vocab, dim);
  model.w1.resize(dim, hidden);
  model.b1.resize(hidden);
  model.w2.resize(hidden, 2);
  model.b2.resize(2);
  read_matrix(in, &model.embeddings);
  read_matrix(in, &model.w1);
  read_vector(in, &model.b1);
  read_matrix(in, &model.w2);
  read_vector(in, &model.b2);
  if (!in) throw std::runtime_error("truncated checkpoint: " + path);
  return model;
}

SieModel load_sie_checkpoint(const std::string& path,
                             std::uint64_t expected_vocab_hash) {
  std::ifstream in = open_in(path);
  check_header(in, kKindSie, expected_vocab_hash);
  std::uint32_t vocab = read_u32(in);
  std::uint32_t dim = read_u32(in);
  std::uint32_t hidden = read_u32(in);
  if (!in || vocab == 0 || dim == 0 || hidden == 0) {
    throw std::runtime_error("malformed checkpoint header");
  }
  SieModel model;
  model.embeddings.resize(vocab, dim);
  model.w1.resize(4 * static_cast<int>(dim), hidden);
  model.b1.resize(hidden);
  model.w2.resize(hidden, 3);
  model.b2.resize(3);
  read_matrix(in, &model.embeddings);
  read_matrix(in, &model.w1);
  read_vector(in, &model.b1);
  read_matrix(in, &model.w2);
  read_vector(in, &model.b2);
  if (!in) throw std::runtime_error("truncated checkpoint: " + path);
  return model;
}

}  // namespace tokenaudit
