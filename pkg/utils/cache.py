import json
import os
import threading
from datetime import datetime

from config import Config
from utils.logger import get_logger

logger = get_logger(__name__)

class Cache:
    """File-backed cache for expensive derived values (one instance per directory)."""

    _instances = {}
    _lock = threading.Lock()

    def __new__(cls, cache_dir=None):
        """Share one cache instance per cache directory."""
        cache_dir = os.path.abspath(cache_dir or Config.OUTPUT["CACHE_DIR"])
        with cls._lock:
            if cache_dir not in cls._instances:
                instance = super(Cache, cls).__new__(cls)
                instance.initialize(cache_dir)
                cls._instances[cache_dir] = instance
            return cls._instances[cache_dir]

    def initialize(self, cache_dir):
        """Initialize the cache."""
        self.memory_cache = {}
        self.cache_dir = cache_dir
        os.makedirs(self.cache_dir, exist_ok=True)

    def _path(self, key):
        return os.path.join(self.cache_dir, f"{key}.json")

    def _expired(self, cache_data):
        if not cache_data.get('ttl'):
            return False
        cached_time = datetime.fromisoformat(cache_data['timestamp'])
        return (datetime.now() - cached_time).total_seconds() > cache_data['ttl']

    def set(self, key, value, ttl=None):
        """Store a JSON-serializable value in the cache."""
        cache_data = {
            'timestamp': datetime.now().isoformat(),
            'data': value,
            'ttl': ttl  # Time to live in seconds
        }
        self.memory_cache[key] = cache_data

        try:
            with open(self._path(key), 'w') as f:
                json.dump(cache_data, f)
        except OSError as e:
            logger.error(f"Error writing cache entry {key}: {str(e)}")

    def get(self, key, default=None):
        """Retrieve a value from the cache."""
        cache_data = self.memory_cache.get(key)

        if cache_data is None:
            try:
                if not os.path.exists(self._path(key)):
                    return default
                with open(self._path(key), 'r') as f:
                    cache_data = json.load(f)
                self.memory_cache[key] = cache_data
            except (OSError, ValueError) as e:
                logger.error(f"Error reading cache entry {key}: {str(e)}")
                return default

        if self._expired(cache_data):
            return default
        return cache_data['data']

    def get_or_compute(self, key, compute, ttl=None):
        """Return the cached value for key, computing and storing it on a miss."""
        value = self.get(key)
        if value is None:
            logger.info(f"Cache miss for {key}, computing")
            value = compute()
            self.set(key, value, ttl)
        return value

    def clear(self, key=None):
        """Clear specific key or entire cache."""
        if key:
            self.memory_cache.pop(key, None)
            if os.path.exists(self._path(key)):
                os.remove(self._path(key))
        else:
            self.memory_cache = {}
            for file_name in os.listdir(self.cache_dir):
                if file_name.endswith('.json'):
                    os.remove(os.path.join(self.cache_dir, file_name))
