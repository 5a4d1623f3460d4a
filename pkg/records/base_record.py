from abc import ABC, abstractmethod


class BaseRecord(ABC):
    """
    Base Record class
    Defines the basic structure of domain records (recordings, signals, regions, reports)

    Records are immutable once constructed and safe to share across workers
    """

    @abstractmethod
    def get_dict(self) -> dict:
        """
        Should return basic information about the record
        Used for logging, sidecar files and report rows

        :return: dictionary about the record
        """
        pass

    def __str__(self):
        fields = "\n".join(f"{key}: {value}" for key, value in self.get_dict().items())
        return f"Type: {self.__class__.__name__}\n{fields}\n"
