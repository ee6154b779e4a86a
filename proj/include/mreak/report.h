#ifndef MREAK_REPORT_H_
#define MREAK_REPORT_H_

#include <json.hpp>

#include "mreak/bench.h"
#include "mreak/pipeline.h"

namespace mreak {

// Times are rounded to 4 decimals (milliseconds). Layout is described in
// the README.
nlohmann::json to_json(const Match& m);
nlohmann::json to_json(const MatchReport& report);
nlohmann::json to_json(const BenchResult& result);

}  // namespace mreak

#endif  // MREAK_REPORT_H_
