"""常量定义"""

# 文件路径常量
CONFIG_FILE = "config.json"
ENV_FILE = ".env"
LOG_DIR = "logs"

# 环境变量
ENV_PREFIX = "RLINDEX_"
ENV_CONFIG_PATH = "RLINDEX_CONFIG"
ENV_LOG_DIR = "RLINDEX_LOG_DIR"
ENV_LOG_LEVEL = "RLINDEX_LOG_LEVEL"

# 应用名（日志记录器根名称）
APP_NAME = "RlIndex"

# 机器字宽（比特），决定打包因子与超字母表编码上限
WORD_BITS = 64

# 序列化魔数
RLBWT_MAGIC = b"RLBW1"
PLCP_MAGIC = b"PLCP1"
RLCSA_MAGIC = b"RCSA1"
LZ77_MAGIC = b"LZ77"

# LZ77 二进制记录标签
LZ77_TAG_LITERAL = 0
LZ77_TAG_COPY = 1

# 后缀数组后端
SA_BACKEND_INDUCED = "induced"
SA_BACKEND_COMPARISON = "comparison"
SA_BACKENDS = (SA_BACKEND_INDUCED, SA_BACKEND_COMPARISON)

# 默认参数
DEFAULT_RLCSA_TAU = 4
DEFAULT_VERIFY_LIMIT = 2000
DEFAULT_SENTINELS = 1

# 文本输入格式
TEXT_FORMAT_RAW = "raw"
TEXT_FORMAT_INTS = "ints"
TEXT_FORMATS = (TEXT_FORMAT_RAW, TEXT_FORMAT_INTS)

# gen 命令写在文本首行的注释头
GEN_HEADER_PREFIX = b"#rlindex-gen"

# 语料生成默认值
DEFAULT_REPEAT_ALPHABET = "ACGT"
DEFAULT_REPEAT_BLOCK = 1024
DEFAULT_REPEAT_COPIES = 16
DEFAULT_MUTATION_RATE = 1e-3
DEFAULT_SEED = 20240601
