#pragma once

#include <memory>

#include "proxyvar/detail/node.hpp"

namespace proxyvar::detail {

Summary summarize(const Family& family, const QuantileRule* rule);

std::shared_ptr<const QuantileRule> build_kumaraswamy_rule(double alpha, double beta);

inline const Summary& summary(const Distribution& d) { return d.node().summary; }

}  // namespace proxyvar::detail
