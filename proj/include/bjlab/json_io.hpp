// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_JSON_IO_HPP_
#define BJLAB_JSON_IO_HPP_

#include <nlohmann/json.hpp>
#include <string>

#include "bjlab/bsemrl.hpp"
#include "bjlab/norms.hpp"
#include "bjlab/operator.hpp"
#include "bjlab/orthogonality.hpp"
#include "bjlab/suites.hpp"

namespace bjlab
{

using Json = nlohmann::json;

/// Schema errors carry the dotted path of the offending field.
SequenceSpec sequence_from_json(const Json &j, const std::string &path = "tail");
OperatorRep operator_from_json(const Json &j, const std::string &path = "op");
LpVector vector_from_json(const Json &j, const std::string &path = "vector");

/// Reads and parses a file; unreadable files and bad JSON are schema errors.
Json read_json_file(const std::string &file);

Json to_json(const SequenceSpec &s);
Json to_json(const OperatorRep &op);
Json to_json(const LpVector &x);
Json to_json(const NormCertificate &c);
Json to_json(const EssentialNormReport &e);
Json to_json(const MTDescription &mt);
Json to_json(const OrthogonalityVerdict &v);
Json to_json(const WitnessReport &w);
Json to_json(const BSDecision &d);
Json to_json(const SuiteReport &r);

/// Sorted keys, no whitespace, doubles with 17 significant digits.
std::string canonical_dump(const Json &j);

/// One row per detail for suites; a header plus one row of scalars otherwise.
std::string to_csv(const Json &j);

}  // namespace bjlab

#endif  // BJLAB_JSON_IO_HPP_
