namespace pfec { namespace { [[maybe_unused]] int placeholder_report = 0; } }
