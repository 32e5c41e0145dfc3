#include "hyperqaoa/transfer_context.hpp"

#include "hyperqaoa/config.hpp"
#include "hyperqaoa/error.hpp"

namespace hyperqaoa {

std::string format_transfer_context(const TransferContext &ctx) {
  std::string out;
  out += "p = " + std::to_string(ctx.depth()) + "\n";
  out += "gammas = " + join_doubles(ctx.reference_gammas, ',') + "\n";
  out += "betas = " + join_doubles(ctx.reference_betas, ',') + "\n";
  out += "beta_star_ref = " + format_double(ctx.reference_beta_star) + "\n";
  if (ctx.reference_degree)
    out += "degree_ref = " + format_double(*ctx.reference_degree) + "\n";
  out += "source = " + ctx.source_label + "\n";
  return out;
}

std::vector<TransferContext> parse_transfer_contexts(std::string_view text) {
  std::vector<TransferContext> out;
  std::vector<std::int64_t> declared;
  auto finish = [&] {
    if (out.empty())
      return;
    const auto &ctx = out.back();
    if (static_cast<std::int64_t>(ctx.depth()) != declared.back())
      throw ParseError("transfer context: p = " +
                       std::to_string(declared.back()) + " but " +
                       std::to_string(ctx.depth()) + " gammas");
    ctx.validate();
  };
  for (const auto &kv : parse_key_values(text)) {
    if (kv.key == "p") {
      finish();
      out.emplace_back();
      declared.push_back(parse_int(kv.value));
      continue;
    }
    if (out.empty())
      throw ParseError("transfer context line " + std::to_string(kv.line) +
                       ": record must start with 'p'");
    auto &ctx = out.back();
    if (kv.key == "gammas")
      ctx.reference_gammas = parse_double_list(kv.value);
    else if (kv.key == "betas")
      ctx.reference_betas = parse_double_list(kv.value);
    else if (kv.key == "beta_star_ref")
      ctx.reference_beta_star = parse_double(kv.value);
    else if (kv.key == "degree_ref")
      ctx.reference_degree = parse_double(kv.value);
    else if (kv.key == "source")
      ctx.source_label = kv.value;
    else
      throw ParseError("transfer context line " + std::to_string(kv.line) +
                       ": unknown key '" + kv.key + "'");
  }
  finish();
  return out;
}

TransferLibrary::TransferLibrary(std::vector<TransferContext> contexts) {
  for (auto &c : contexts)
    add(std::move(c));
}

void TransferLibrary::add(TransferContext ctx) {
  ctx.validate();
  if (ctx.depth() == 0)
    throw ConfigError("transfer context with depth 0");
  const std::size_t p = ctx.depth();
  by_depth_[p] = std::move(ctx);
}

const TransferContext &TransferLibrary::at_depth(std::size_t p) const {
  auto it = by_depth_.find(p);
  if (it == by_depth_.end())
    throw ConfigError("no reference angles for depth p=" + std::to_string(p) +
                      " (library holds up to p=" + std::to_string(max_depth()) +
                      ")");
  return it->second;
}

std::size_t TransferLibrary::max_depth() const {
  return by_depth_.empty() ? 0 : by_depth_.rbegin()->first;
}

std::string TransferLibrary::to_text() const {
  std::string out;
  for (const auto &[p, ctx] : by_depth_) {
    if (!out.empty())
      out += "\n";
    out += format_transfer_context(ctx);
  }
  return out;
}

TransferLibrary TransferLibrary::from_text(std::string_view text) {
  return TransferLibrary(parse_transfer_contexts(text));
}

TransferLibrary TransferLibrary::load(const std::string &path) {
  return from_text(read_text_file(path));
}

void TransferLibrary::save(const std::string &path) const {
  write_text_file(path, to_text());
}

} // namespace hyperqaoa
