"""Services package: road, sensor, detectors and scenario harness."""
