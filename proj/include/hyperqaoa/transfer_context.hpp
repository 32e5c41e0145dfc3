#pragma once

#include "hyperqaoa/analytic.hpp"

#include <map>
#include <string>
#include <string_view>

namespace hyperqaoa {

// Text format, one record per depth, each record opened by its "p" key:
//
//   p = 2
//   gammas = 0.41, 0.78
//   betas = 0.50, 0.28
//   beta_star_ref = 0.39269908169872414
//   degree_ref = 3          # optional
//   source = literature
//
// Numbers are written in shortest round-trip form.
std::string format_transfer_context(const TransferContext &ctx);

std::vector<TransferContext> parse_transfer_contexts(std::string_view text);

// Reference angles keyed by depth.
class TransferLibrary {
public:
  TransferLibrary() = default;
  explicit TransferLibrary(std::vector<TransferContext> contexts);

  void add(TransferContext ctx);

  // Throws ConfigError when no context of exactly this depth exists.
  const TransferContext &at_depth(std::size_t p) const;
  bool has_depth(std::size_t p) const { return by_depth_.count(p) != 0; }
  std::size_t max_depth() const;
  const std::map<std::size_t, TransferContext> &contexts() const {
    return by_depth_;
  }

  std::string to_text() const;
  static TransferLibrary from_text(std::string_view text);
  static TransferLibrary load(const std::string &path);
  void save(const std::string &path) const;

private:
  std::map<std::size_t, TransferContext> by_depth_;
};

} // namespace hyperqaoa
