#pragma once

#include "annosent/ingest.hpp"

namespace annosent::detail {

// Creates implicit DocumentRecords for doc ids that lack one and rejects
// reports whose annotation graph fails validation (MissingParent ->
// DanglingReference, everything else -> SchemaViolation).
void finalize_report(IngestReport& report);

}  // namespace annosent::detail
